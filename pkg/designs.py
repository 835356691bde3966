"""
Heffter systems, Heffter spaces and their verifiers

Blocks are always stored as ordered tuples. Unordered semantics are obtained by
ignoring the order; the order matters only for simplicity (distinct partial sums),
which the cycle constructions consume.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm, prod
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import galois

from errors import (
    ArrayConditionViolated, InvalidSpace, MismatchedHalfSets, NotAHalfSet,
    NotOrthogonal, NotZeroSum
)
from field_core import Group, half_set

OrderedBlock = Tuple[int, ...]

BOUND_FEASIBLE = "feasible"
BOUND_TIGHT = "tight-linear"
BOUND_INFEASIBLE = "infeasible"

MAX_LISTED_VIOLATIONS = 25


def fmt_block(block: Iterable[int]) -> str:
    return "(" + " ".join(str(x) for x in block) + ")"


@dataclass(frozen=True)
class HeffterSystem:
    """A partition of a half-set into zero-sum ordered blocks"""
    halfset: FrozenSet[int]
    blocks: Tuple[OrderedBlock, ...]
    name: str = ""

    @property
    def v(self) -> int:
        return len(self.halfset)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(sorted({len(b) for b in self.blocks}))

    @property
    def k(self) -> Optional[int]:
        sizes = self.sizes
        return sizes[0] if len(sizes) == 1 else None


@dataclass(frozen=True)
class HeffterSpace:
    """A resolved partial linear space whose parallel classes are Heffter systems"""
    halfset: FrozenSet[int]
    classes: Tuple[HeffterSystem, ...]

    @property
    def v(self) -> int:
        return len(self.halfset)

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def blocks(self) -> List[OrderedBlock]:
        return [b for cls in self.classes for b in cls.blocks]

    @property
    def class_sizes(self) -> Tuple[Optional[int], ...]:
        """Block size of each class (None for a class with mixed sizes)"""
        return tuple(cls.k for cls in self.classes)

    @property
    def k(self) -> Optional[int]:
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None


@dataclass
class DesignReport:
    """Outcome of a verification: parameters plus located violations"""
    kind: str
    v: int = 0
    sizes: Tuple = ()
    r: int = 0
    density: Optional[Fraction] = None
    violations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    params: Dict[str, str] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, message: str):
        self.violations.append(message)

    def absorb(self, other: "DesignReport", prefix: str = ""):
        self.violations.extend(prefix + msg for msg in other.violations)
        self.notes.extend(prefix + msg for msg in other.notes)

    def sizes_text(self) -> str:
        counts = Counter(self.sizes)
        if not counts:
            return "{}"
        parts = [f"{k}^{c}" if c > 1 else str(k) for k, c in sorted(counts.items())]
        return "{" + ",".join(parts) + "}"

    def summary_lines(self) -> List[str]:
        lines = [f"{'✓ VALID' if self.valid else '❌ INVALID'} {self.kind}"]
        lines.append(f"  parameters: v={self.v} sizes={self.sizes_text()} r={self.r}")
        if self.density is not None:
            lines.append(f"  density: {self.density} (~{float(self.density):.4f})")
        for key, value in self.params.items():
            lines.append(f"  {key}: {value}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        shown = self.violations[:MAX_LISTED_VIOLATIONS]
        for violation in shown:
            lines.append(f"  violation: {violation}")
        if len(self.violations) > len(shown):
            lines.append(f"  ... {len(self.violations) - len(shown)} more violations")
        return lines

    def structured_lines(self) -> List[str]:
        lines = [
            f"valid={'true' if self.valid else 'false'}",
            f"kind={self.kind}",
            f"v={self.v}",
            f"sizes={','.join(str(s) for s in self.sizes)}",
            f"r={self.r}",
        ]
        if self.density is not None:
            lines.append(f"density={self.density.numerator}/{self.density.denominator}")
        for key, value in self.params.items():
            lines.append(f"{key}={value}")
        lines.append(f"violations={len(self.violations)}")
        for i, violation in enumerate(self.violations):
            lines.append(f"violation.{i}={violation}")
        return lines


# -- ordering and simplicity ----------------------------------------------

def partial_sums(group: Group, block: Sequence[int]) -> Tuple[int, ...]:
    sums = []
    acc = group.zero
    for b in block:
        acc = group.add(acc, b)
        sums.append(acc)
    return tuple(sums)


def is_simple(group: Group, block: Sequence[int]) -> bool:
    sums = partial_sums(group, block)
    return len(set(sums)) == len(sums)


def order_for_simplicity(group: Group, block: Iterable[int]) -> Optional[OrderedBlock]:
    """
    Find an ordering of a zero-sum block whose partial sums are pairwise distinct

    The least element goes first; the rest are placed by backtracking in increasing
    order, pruning any prefix whose running sum repeats or returns to 0 early.

    Returns:
        The first simple ordering found, or None if none exists
    """
    elements = sorted(set(block))
    block = tuple(block)
    if len(elements) != len(block):
        raise ValueError(f"block {fmt_block(block)} has repeated elements")
    if group.sum(elements) != group.zero:
        raise NotZeroSum(f"block {fmt_block(block)} sums to {group.sum(elements)}, not 0")

    k = len(elements)
    first = elements[0]
    order = [first]
    seen = {first}
    used = [False] * k
    used[0] = True

    def extend(acc: int) -> bool:
        if len(order) == k:
            return True
        for idx in range(1, k):
            if used[idx]:
                continue
            nxt = group.add(acc, elements[idx])
            last = len(order) == k - 1
            if nxt in seen or (nxt == group.zero and not last):
                continue
            used[idx] = True
            order.append(elements[idx])
            seen.add(nxt)
            if extend(nxt):
                return True
            seen.discard(nxt)
            order.pop()
            used[idx] = False
        return False

    if first == group.zero:
        return None
    return tuple(order) if extend(first) else None


# -- systems ---------------------------------------------------------------

def _check_halfset(group: Group, V: Iterable[int], report: DesignReport) -> bool:
    try:
        half_set(group, V)
        return True
    except NotAHalfSet as e:
        report.add(f"halfset: {e}")
        return False


def _system_violations(group: Group, V: FrozenSet[int], blocks: Sequence[OrderedBlock],
                       report: DesignReport, label: str = ""):
    owner: Dict[int, int] = {}
    for i, block in enumerate(blocks):
        where = f"{label}block {i} {fmt_block(block)}"
        if len(block) < 3:
            report.add(f"{where}: length {len(block)} < 3")
        if len(set(block)) != len(block):
            report.add(f"{where}: repeated elements")
        for x in block:
            if x not in V:
                report.add(f"{where}: element {x} is not in the half-set")
            elif x in owner and owner[x] != i:
                report.add(f"{where}: element {x} also lies in block {owner[x]}")
            else:
                owner[x] = i
        total = group.sum(block)
        if total != group.zero:
            report.add(f"{where}: sums to {total}, not 0")
    missing = sorted(V - set(owner))
    if missing:
        report.add(f"{label}elements not covered by any block: {missing}")


def verify_heffter_system(group: Group, V: Iterable[int], blocks: Sequence[Sequence[int]],
                          name: str = "") -> DesignReport:
    """
    Check that the blocks partition the half-set V into zero-sum parts

    Args:
        group: Ambient group (FieldCtx or CyclicGroup)
        V: Candidate half-set
        blocks: Ordered blocks

    Returns:
        DesignReport of kind 'system'
    """
    V = frozenset(V)
    blocks = [tuple(b) for b in blocks]
    report = DesignReport(kind="system", v=len(V), r=1)
    report.sizes = tuple(sorted({len(b) for b in blocks}))
    _check_halfset(group, V, report)
    _system_violations(group, V, blocks, report)
    if name:
        report.params['name'] = name
    return report


def make_system(group: Group, V: Iterable[int], blocks: Iterable[Sequence[int]], name: str = "") -> HeffterSystem:
    """Validate and wrap blocks as a HeffterSystem; raises InvalidSpace on failure"""
    system = HeffterSystem(halfset=frozenset(V), blocks=tuple(tuple(b) for b in blocks), name=name)
    report = verify_heffter_system(group, system.halfset, system.blocks, name)
    if not report.valid:
        raise InvalidSpace(f"system {name or '?'} is invalid: {report.violations[0]}")
    return system


def verify_orthogonality(P: HeffterSystem, Q: HeffterSystem) -> Tuple[bool, Optional[Tuple[OrderedBlock, OrderedBlock]]]:
    """
    Two systems are orthogonal when every pair of blocks shares at most one element

    Returns:
        (True, None) or (False, (B, B')) for a violating pair
    """
    if P.halfset != Q.halfset:
        raise MismatchedHalfSets("orthogonality needs systems on the same half-set")
    owner = {x: j for j, block in enumerate(Q.blocks) for x in block}
    for block in P.blocks:
        counts = Counter(owner[x] for x in block if x in owner)
        for j, count in counts.items():
            if count > 1:
                return False, (block, Q.blocks[j])
    return True, None


# -- spaces ----------------------------------------------------------------

def _pls_violations(space: HeffterSpace, report: DesignReport):
    seen: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for c, cls in enumerate(space.classes):
        for b, block in enumerate(cls.blocks):
            for x, y in combinations(sorted(set(block)), 2):
                key = (x, y)
                if key in seen:
                    c0, b0 = seen[key]
                    report.add(
                        f"pair {{{x},{y}}} lies in {_class_label(space, c0)} block {b0} "
                        f"and {_class_label(space, c)} block {b}"
                    )
                else:
                    seen[key] = (c, b)


def _class_label(space: HeffterSpace, c: int) -> str:
    name = space.classes[c].name
    return name if name else f"class {c}"


def classify(space: HeffterSpace) -> str:
    k = space.k
    if k is None or space.r == 0:
        return "space"
    return "net" if space.v == k * k else "configuration"


def verify_heffter_space(group: Group, space: HeffterSpace) -> DesignReport:
    """
    Check half-set validity, every class as a Heffter system, and the partial linear space property

    Returns:
        DesignReport classified as space, configuration (constant k) or net (also v = k^2)
    """
    report = DesignReport(kind=classify(space), v=space.v, r=space.r)
    report.sizes = tuple(k if k is not None else 0 for k in space.class_sizes)
    _check_halfset(group, space.halfset, report)
    for c, cls in enumerate(space.classes):
        if cls.halfset != space.halfset:
            report.add(f"{_class_label(space, c)}: declared on a different half-set")
        _system_violations(group, space.halfset, cls.blocks, report, label=f"{_class_label(space, c)} ")
        if cls.k is None:
            report.notes.append(f"{_class_label(space, c)} has mixed block sizes {cls.sizes}")
    _pls_violations(space, report)
    if report.valid and space.r > 0 and space.v > 1:
        report.density = density(space)
    return report


def collinearity_graph(space: HeffterSpace) -> Dict[int, Set[int]]:
    """Adjacency sets: x ~ y when some block contains both"""
    graph: Dict[int, Set[int]] = {x: set() for x in space.halfset}
    for block in space.blocks:
        for x in block:
            graph.setdefault(x, set()).update(y for y in block if y != x)
    return graph


def density(space: HeffterSpace) -> Fraction:
    """
    Edge density of the collinearity graph, (sum k_i - r)/(v - 1)

    The formula is cross-checked against |E| / C(v, 2) computed from the graph.
    """
    structural = DesignReport(kind="space")
    for c, cls in enumerate(space.classes):
        covered = Counter(x for block in cls.blocks for x in block)
        if set(covered) != set(space.halfset) or any(n != 1 for n in covered.values()):
            structural.add(f"{_class_label(space, c)} does not partition the point set")
    _pls_violations(space, structural)
    if not structural.valid:
        raise InvalidSpace(structural.violations[0])
    if space.v < 2:
        raise InvalidSpace("density needs at least two points")

    graph = collinearity_graph(space)
    edges = sum(len(nbrs) for nbrs in graph.values()) // 2
    from_graph = Fraction(edges, comb(space.v, 2))
    if all(k is not None for k in space.class_sizes):
        from_formula = Fraction(sum(space.class_sizes) - space.r, space.v - 1)
        if from_formula != from_graph:
            raise InvalidSpace(f"density formula {from_formula} disagrees with collinearity graph {from_graph}")
        degree = sum(k - 1 for k in space.class_sizes)
        irregular = [x for x, nbrs in graph.items() if len(nbrs) != degree]
        if irregular:
            raise InvalidSpace(f"collinearity graph is not {degree}-regular at point {irregular[0]}")
    return from_graph


def check_upper_bound(v: int, sizes: Sequence[int]) -> str:
    """Compare sum(k_i - 1) with v - 1: infeasible above, tight (linear) at equality"""
    excess = sum(k - 1 for k in sizes)
    if excess > v - 1:
        return BOUND_INFEASIBLE
    if excess == v - 1:
        return BOUND_TIGHT
    return BOUND_FEASIBLE


def max_mohs_size(v: int, k: int) -> int:
    """Largest possible number of mutually orthogonal (v,k) Heffter systems"""
    return (v - 1) // (k - 1)


def check_linear_feasibility(invariant_factors: Sequence[int], r: int) -> Tuple[bool, str]:
    """
    Rule out linear Heffter spaces of degree r over an abelian group of odd order

    A linear space forces every element order to divide r - 1.

    Args:
        invariant_factors: The group as Z_{d1} x ... x Z_{dm}
        r: Number of parallel classes

    Returns:
        (possible, reason)
    """
    factors = [int(d) for d in invariant_factors]
    if not factors or any(d < 2 or d % 2 == 0 for d in factors):
        raise ValueError(f"invariant factors must be odd integers > 1, got {factors}")
    exponent = lcm(*factors)
    order = prod(factors)
    if r < 2:
        return False, f"r={r}: a non-trivial linear space needs at least two parallel classes"
    if (r - 1) % exponent != 0:
        primes, multiplicities = galois.factors(exponent)
        for ell, a in zip(primes, multiplicities):
            prime_power = int(ell) ** int(a)
            if (r - 1) % prime_power != 0:
                reason = f"an element of order {prime_power} exists and does not divide r-1 = {r - 1}"
                if len(factors) == 1 and r <= (order - 1) // 2:
                    reason += f"; a cyclic group of order {order} never carries a linear space with r <= {(order - 1) // 2}"
                return False, reason
    return True, f"every element order divides r-1 = {r - 1}; not excluded"


def assemble_space(systems: Sequence[HeffterSystem]) -> HeffterSpace:
    """Combine pairwise-orthogonal Heffter systems on one half-set into a space"""
    if not systems:
        raise InvalidSpace("a space needs at least one class to fix its point set")
    V = systems[0].halfset
    for system in systems:
        if system.halfset != V:
            raise MismatchedHalfSets("all classes must live on the same half-set")
    for (i, P), (j, Q) in combinations(enumerate(systems), 2):
        ok, witness = verify_orthogonality(P, Q)
        if not ok:
            raise NotOrthogonal(
                f"classes {i} and {j} are not orthogonal: {fmt_block(witness[0])} meets {fmt_block(witness[1])} twice"
            )
    return HeffterSpace(halfset=V, classes=tuple(systems))


def space_to_systems(space: HeffterSpace) -> List[HeffterSystem]:
    return list(space.classes)


def truncate_space(space: HeffterSpace, r: int) -> HeffterSpace:
    """Keep the first r parallel classes"""
    if not 0 <= r <= space.r:
        raise ValueError(f"cannot keep {r} of {space.r} classes")
    return HeffterSpace(halfset=space.halfset, classes=space.classes[:r])


# -- the array view ----------------------------------------------------------

Array = List[List[Optional[int]]]


def array_from_pair(P: HeffterSystem, Q: HeffterSystem) -> Array:
    """
    Cell (i, j) holds the common element of the i-th block of P and the j-th block of Q
    """
    ok, witness = verify_orthogonality(P, Q)
    if not ok:
        raise NotOrthogonal(f"{fmt_block(witness[0])} and {fmt_block(witness[1])} share more than one element")
    rows = []
    for B in P.blocks:
        row = []
        members = set(B)
        for B2 in Q.blocks:
            common = members.intersection(B2)
            row.append(common.pop() if common else None)
        rows.append(row)
    return rows


def pair_from_array(group: Group, array: Array) -> Tuple[HeffterSystem, HeffterSystem]:
    """
    Rebuild the orthogonal pair (rows, columns) from a Heffter array

    Raises:
        ArrayConditionViolated citing which of (a)-(d) fails
    """
    if not array or not array[0]:
        raise ArrayConditionViolated('a', "empty array")
    width = len(array[0])
    if any(len(row) != width for row in array):
        raise ArrayConditionViolated('a', "rows have different lengths")

    row_fill = [sum(cell is not None for cell in row) for row in array]
    if len(set(row_fill)) != 1:
        i = next(i for i, h in enumerate(row_fill) if h != row_fill[0])
        raise ArrayConditionViolated('a', f"row {i} has {row_fill[i]} filled cells, row 0 has {row_fill[0]}")
    columns = [[row[j] for row in array] for j in range(width)]
    col_fill = [sum(cell is not None for cell in col) for col in columns]
    if len(set(col_fill)) != 1:
        j = next(j for j, k in enumerate(col_fill) if k != col_fill[0])
        raise ArrayConditionViolated('b', f"column {j} has {col_fill[j]} filled cells, column 0 has {col_fill[0]}")

    entries = [cell for row in array for cell in row if cell is not None]
    if len(set(entries)) != len(entries):
        dup = next(x for x, c in Counter(entries).items() if c > 1)
        raise ArrayConditionViolated('c', f"entry {dup} occurs more than once")
    try:
        V = half_set(group, entries)
    except NotAHalfSet as e:
        raise ArrayConditionViolated('c', str(e))

    row_blocks = [tuple(cell for cell in row if cell is not None) for row in array]
    col_blocks = [tuple(cell for cell in col if cell is not None) for col in columns]
    for i, block in enumerate(row_blocks):
        if group.sum(block) != group.zero:
            raise ArrayConditionViolated('d', f"row {i} sums to {group.sum(block)}")
    for j, block in enumerate(col_blocks):
        if group.sum(block) != group.zero:
            raise ArrayConditionViolated('d', f"column {j} sums to {group.sum(block)}")

    logging.debug(f"✓ Array {len(array)}x{width} satisfies conditions (a)-(d)")
    return (HeffterSystem(halfset=V, blocks=tuple(row_blocks), name="rows"),
            HeffterSystem(halfset=V, blocks=tuple(col_blocks), name="columns"))
