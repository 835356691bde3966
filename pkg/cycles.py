"""
Partial-sum cycles, G-regular cycle systems and their orthogonality, plus the
Steiner triple system tools (near 1-factorizations and super-orthogonality).
"""
import logging
import os
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from config import SEARCH_SETTINGS
from designs import DesignReport, HeffterSpace, HeffterSystem, fmt_block, is_simple, partial_sums
from errors import BaseCyclesInvalid, NotAnSTS, NotSimple, NotZeroSum, VertexSetMismatch
from field_core import Group
from utils import ensure_dir_exists, progress


@dataclass(frozen=True, eq=False)
class Cycle:
    """A k-cycle given by its vertex sequence, equal to its rotations and reflections"""
    vertices: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def key(self) -> Tuple[int, ...]:
        """Least vertex first, lesser neighbour second"""
        vs = self.vertices
        k = len(vs)
        i = vs.index(min(vs))
        forward = tuple(vs[(i + j) % k] for j in range(k))
        backward = tuple(vs[(i - j) % k] for j in range(k))
        return min(forward, backward)

    def edges(self) -> List[Tuple[int, int]]:
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))]

    def differences(self, group: Group) -> List[int]:
        vs = self.vertices
        k = len(vs)
        out = []
        for i in range(k):
            d = group.sub(vs[(i + 1) % k], vs[i])
            out.extend((d, group.neg(d)))
        return out

    def translate(self, group: Group, g: int) -> "Cycle":
        return Cycle(tuple(group.add(c, g) for c in self.vertices))

    def __eq__(self, other) -> bool:
        return isinstance(other, Cycle) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Cycle{fmt_block(self.vertices)}"


@dataclass(frozen=True)
class CycleSystem:
    """Base cycles over a group; `cycles` holds every translate once developed"""
    group: Group
    base: Tuple[Cycle, ...]
    name: str = ""
    cycles: Tuple[Cycle, ...] = ()

    @property
    def developed(self) -> bool:
        return bool(self.cycles)


def partial_sum_cycle(group: Group, block: Sequence[int]) -> Cycle:
    """
    (b_0, ..., b_{k-1}) -> (b_0, b_0+b_1, ..., 0)

    Raises:
        NotZeroSum, NotSimple
    """
    block = tuple(block)
    if group.sum(block) != group.zero:
        raise NotZeroSum(f"block {fmt_block(block)} sums to {group.sum(block)}")
    if not is_simple(group, block):
        raise NotSimple(f"block {fmt_block(block)} has repeated partial sums", block)
    cycle = Cycle(partial_sums(group, block))
    expected = Counter(list(block) + [group.neg(b) for b in block])
    if Counter(cycle.differences(group)) != expected:
        raise AssertionError(f"differences of {cycle} differ from +-{fmt_block(block)}")
    return cycle


def base_cycles(group: Group, system: HeffterSystem) -> CycleSystem:
    """One partial-sum cycle per block of a simple Heffter system"""
    cycles = []
    for i, block in enumerate(system.blocks):
        try:
            cycles.append(partial_sum_cycle(group, block))
        except NotSimple as e:
            raise NotSimple(f"{system.name or 'system'} block {i}: {e}", block, i)
    return CycleSystem(group=group, base=tuple(cycles), name=system.name)


def verify_base_cycles(group: Group, cycles: Sequence[Cycle]) -> DesignReport:
    """
    Base cycles are valid when their differences cover every nonzero element exactly once

    Returns:
        DesignReport of kind 'basecycles' with params uncovered/repeated
    """
    report = DesignReport(kind="basecycles", v=(group.order - 1) // 2,
                          sizes=tuple(c.k for c in cycles), r=len(cycles))
    for i, cycle in enumerate(cycles):
        if len(set(cycle.vertices)) != cycle.k:
            report.add(f"cycle {i} {fmt_block(cycle.vertices)}: repeated vertices")
        if cycle.k < 3:
            report.add(f"cycle {i} {fmt_block(cycle.vertices)}: length {cycle.k} < 3")
    counts = Counter(d for cycle in cycles for d in cycle.differences(group))
    uncovered = [x for x in group.elements() if x != group.zero and x not in counts]
    repeated = sorted(x for x, c in counts.items() if c > 1)
    if counts.get(group.zero):
        report.add("difference 0 occurs")
    if uncovered:
        report.add(f"{len(uncovered)} elements uncovered: {uncovered[:20]}")
    if repeated:
        report.add(f"{len(repeated)} differences repeated: {repeated[:20]}")
    report.params['uncovered'] = str(len(uncovered))
    report.params['repeated'] = str(len(repeated))
    return report


def _edge_keys(order: int, cycles: Iterable[Cycle]) -> np.ndarray:
    return np.array([a * order + b for cycle in cycles for a, b in cycle.edges()], dtype=np.int64)


def develop_cycle_system(group: Group, system: CycleSystem) -> CycleSystem:
    """
    Materialize every translate C + g and check that the edges partition K_|G|

    Raises:
        BaseCyclesInvalid when the differences do not tile G minus 0
    """
    report = verify_base_cycles(group, system.base)
    if not report.valid:
        raise BaseCyclesInvalid(report.violations[0])
    cycles = tuple(c.translate(group, g) for c in system.base for g in group.elements())
    keys = _edge_keys(group.order, cycles)
    if len(keys) != comb(group.order, 2) or len(np.unique(keys)) != len(keys):
        raise AssertionError(f"translates of {system.name or 'the base cycles'} do not partition the edges of K_{group.order}")
    logging.debug(f"✓ Developed {len(cycles)} cycles covering {len(keys)} edges")
    return CycleSystem(group=group, base=system.base, name=system.name, cycles=cycles)


def _edge_index(system: CycleSystem) -> Dict[Tuple[int, int], int]:
    return {edge: i for i, cycle in enumerate(system.cycles) for edge in cycle.edges()}


def _materialized(system: CycleSystem) -> CycleSystem:
    return system if system.developed else develop_cycle_system(system.group, system)


def _first_overlap(cycles: Iterable[Cycle], index: Dict[Tuple[int, int], int],
                   other: CycleSystem) -> Optional[Tuple[Cycle, Cycle]]:
    for cycle in cycles:
        shared = Counter(index[edge] for edge in cycle.edges() if edge in index)
        for j, count in shared.items():
            if count > 1:
                return cycle, other.cycles[j]
    return None


def cycle_systems_orthogonal(A: CycleSystem, B: CycleSystem) -> Tuple[bool, Optional[Tuple[Cycle, Cycle]]]:
    """
    Every cycle of A shares at most one edge with every cycle of B

    Returns:
        (True, None) or (False, (cycle of A, cycle of B))
    """
    if A.group != B.group:
        raise VertexSetMismatch(f"{A.group.describe()} and {B.group.describe()} differ")
    A, B = _materialized(A), _materialized(B)
    witness = _first_overlap(A.cycles, _edge_index(B), B)
    return witness is None, witness


def base_systems_orthogonal(A: CycleSystem, B: CycleSystem) -> Tuple[bool, Optional[Tuple[Cycle, Cycle]]]:
    """Same verdict as cycle_systems_orthogonal, checking only the base cycles of A"""
    if A.group != B.group:
        raise VertexSetMismatch(f"{A.group.describe()} and {B.group.describe()} differ")
    B = _materialized(B)
    witness = _first_overlap(A.base, _edge_index(B), B)
    return witness is None, witness


def space_cycle_systems(group: Group, space: HeffterSpace) -> List[CycleSystem]:
    return [base_cycles(group, cls) for cls in space.classes]


def materialize_cycles(system: CycleSystem, path: str) -> int:
    """Write one developed cycle per line; returns the number written"""
    system = _materialized(system)
    ensure_dir_exists(os.path.dirname(path))
    with open(path, "w") as f:
        for cycle in system.cycles:
            f.write(" ".join(str(c) for c in cycle.vertices) + "\n")
    logging.info(f"💾 Wrote {len(system.cycles)} cycles to {path}")
    return len(system.cycles)


def mu_lower_bounds(spaces: Sequence[Tuple[Group, HeffterSpace]]) -> Dict[Tuple[int, int], int]:
    """
    Mutually orthogonal k-cycle systems of order 2v+1 certified by each space

    A class counts when all its blocks are simple. Keys are (k, 2v+1).
    """
    bounds: Dict[Tuple[int, int], int] = {}
    for group, space in spaces:
        tally = Counter(cls.k for cls in space.classes
                        if cls.k is not None and all(is_simple(group, b) for b in cls.blocks))
        for k, count in tally.items():
            key = (k, 2 * space.v + 1)
            bounds[key] = max(bounds.get(key, 0), count)
    return bounds


def weil_mohs_lower_bound(k: int, w: int) -> int:
    """ceil(w / 4k^4)"""
    return ceil(w / (4 * k ** 4))


# -- Steiner triple systems ----------------------------------------------------

Triple = Tuple[int, int, int]
Pair = Tuple[int, int]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


def verify_sts(points: Sequence[int], triples: Iterable[Sequence[int]]) -> FrozenSet[Triple]:
    """
    Every pair of points lies in exactly one triple

    Returns:
        The triples as a frozenset of sorted tuples

    Raises:
        NotAnSTS naming the first defect
    """
    points = set(points)
    normalized = set()
    seen: Dict[Pair, Triple] = {}
    for t in triples:
        triple = tuple(sorted(t))
        if len(triple) != 3 or len(set(triple)) != 3:
            raise NotAnSTS(f"{t} is not a triple of distinct points")
        if not set(triple) <= points:
            raise NotAnSTS(f"{t} uses points outside the point set")
        for a, b in combinations(triple, 2):
            if (a, b) in seen:
                raise NotAnSTS(f"pair {{{a},{b}}} lies in {seen[(a, b)]} and {triple}")
            seen[(a, b)] = triple
        normalized.add(triple)
    if len(seen) != comb(len(points), 2):
        missing = next(p for p in combinations(sorted(points), 2) if p not in seen)
        raise NotAnSTS(f"pair {{{missing[0]},{missing[1]}}} is not covered")
    return frozenset(normalized)


def _third_points(sts: Iterable[Triple]) -> Dict[Pair, int]:
    third = {}
    for a, b, c in sts:
        third[(a, b)] = c
        third[(a, c)] = b
        third[(b, c)] = a
    return third


def near_one_factorization(sts: Iterable[Triple]) -> Dict[int, FrozenSet[Pair]]:
    """x -> N(x), the pairs completing x to a triple"""
    factors: Dict[int, Set[Pair]] = {}
    for a, b, c in sts:
        factors.setdefault(a, set()).add(_pair(b, c))
        factors.setdefault(b, set()).add(_pair(a, c))
        factors.setdefault(c, set()).add(_pair(a, b))
    return {x: frozenset(pairs) for x, pairs in factors.items()}


def sts_super_orthogonal(points: Sequence[int], S: Iterable[Sequence[int]], S2: Iterable[Sequence[int]]) -> Tuple[bool, Optional[str]]:
    """
    Disjointness plus orthogonality of the two near 1-factorizations

    Both the completing-point condition and the factor-intersection condition are
    evaluated; they must agree.

    Returns:
        (verdict, witness description or None)
    """
    S = verify_sts(points, S)
    S2 = verify_sts(points, S2)
    shared = sorted(S & S2)
    if shared:
        return False, f"triple {shared[0]} lies in both systems"

    third2 = _third_points(S2)
    N1 = near_one_factorization(S)
    N2 = near_one_factorization(S2)

    witness_a = None
    for a in sorted(N1):
        completions: Dict[int, Pair] = {}
        for pair in sorted(N1[a]):
            w = third2[pair]
            if w in completions:
                witness_a = f"pairs {completions[w]} and {pair} of N({a}) both complete to {w} in the second system"
                break
            completions[w] = pair
        if witness_a:
            break

    witness_b = None
    for a in sorted(N1):
        for c in sorted(N2):
            common = N1[a] & N2[c]
            if len(common) > 1:
                witness_b = f"N({a}) and N'({c}) share {sorted(common)[:2]}"
                break
        if witness_b:
            break

    if (witness_a is None) != (witness_b is None):
        raise AssertionError("the two super-orthogonality conditions disagree")
    return witness_a is None, witness_a


def random_sts(v: int, rng: random.Random, max_steps: Optional[int] = None) -> FrozenSet[Triple]:
    """
    Random STS(v) on {0, ..., v-1} by hill-climbing

    A live point lacking a pair is joined with two live partners; if that pair is already
    covered its triple is swapped out. Restarts whenever the step budget runs out.
    """
    if v % 6 not in (1, 3):
        raise NotAnSTS(f"no STS of order {v}: v must be 1 or 3 mod 6")
    target = v * (v - 1) // 6
    max_steps = max_steps or SEARCH_SETTINGS['sts_hill_climb_steps']
    while True:
        other: List[Dict[int, int]] = [dict() for _ in range(v)]
        triples: Set[Triple] = set()
        for _ in range(max_steps):
            if len(triples) == target:
                return verify_sts(range(v), triples)
            live = [x for x in range(v) if len(other[x]) < v - 1]
            x = rng.choice(live)
            free = [y for y in range(v) if y != x and y not in other[x]]
            y, z = rng.sample(free, 2)
            if z in other[y]:
                w = other[y][z]
                old = tuple(sorted((w, y, z)))
                triples.discard(old)
                for a, b in combinations(old, 2):
                    other[a].pop(b, None)
                    other[b].pop(a, None)
            new = tuple(sorted((x, y, z)))
            triples.add(new)
            for a, b in combinations(new, 2):
                c = next(t for t in new if t not in (a, b))
                other[a][b] = c
                other[b][a] = c
        logging.debug(f"🔄 Hill-climbing for STS({v}) restarts after {max_steps} steps")


def enumerate_sts9() -> List[FrozenSet[Triple]]:
    """All labelled STS(9) on {0, ..., 8}, in lexicographic order of their triples"""
    v = 9
    covered = [[False] * v for _ in range(v)]
    chosen: List[Triple] = []
    found: List[FrozenSet[Triple]] = []

    def mark(t: Triple, value: bool):
        for a, b in combinations(t, 2):
            covered[a][b] = covered[b][a] = value

    def rec():
        pair = next(((a, b) for a in range(v) for b in range(a + 1, v) if not covered[a][b]), None)
        if pair is None:
            found.append(frozenset(chosen))
            return
        a, b = pair
        for c in range(v):
            if c in (a, b) or covered[a][c] or covered[b][c]:
                continue
            t = tuple(sorted((a, b, c)))
            mark(t, True)
            chosen.append(t)
            rec()
            chosen.pop()
            mark(t, False)

    rec()
    return sorted(found, key=sorted)


def sts9_super_orthogonal_pairs(full: bool = False, checkpoint=None) -> Tuple[int, int]:
    """
    Check disjoint STS(9) pairs for super-orthogonality

    By default the first system is fixed (the group of the 9-set acts transitively on
    labelled STS(9)); full mode checks every pair and can resume from a checkpoint.

    Returns:
        (disjoint pairs checked, super-orthogonal pairs found)
    """
    systems = enumerate_sts9()
    outer = range(len(systems)) if full else range(1)
    checked = found = 0
    for i in progress(outer, desc="STS(9) pairs"):
        key = str(i)
        if checkpoint is not None and checkpoint.is_item_complete(key):
            c, f = checkpoint.get_result(key)
            checked, found = checked + c, found + f
            continue
        c = f = 0
        for j in range(i + 1, len(systems)):
            if systems[i] & systems[j]:
                continue
            c += 1
            if sts_super_orthogonal(range(9), systems[i], systems[j])[0]:
                f += 1
        checked, found = checked + c, found + f
        if checkpoint is not None:
            checkpoint.mark_item_complete(key, [c, f])
    if checkpoint is not None:
        checkpoint.mark_all_complete()
    return checked, found


def _complete_super_orthogonal(v: int, S: FrozenSet[Triple], rng: random.Random,
                               node_limit: int) -> Optional[FrozenSet[Triple]]:
    """Backtrack on S' with the most constrained uncovered pair first"""
    third = _third_points(S)
    covered = [[False] * v for _ in range(v)]
    used: List[Set[int]] = [set() for _ in range(v)]
    chosen: List[Triple] = []
    nodes = 0

    def allowed(t: Triple) -> bool:
        if t in S:
            return False
        for c in t:
            a, b = (p for p in t if p != c)
            if third[_pair(a, b)] in used[c]:
                return False
        return True

    def apply(t: Triple, on: bool):
        for c in t:
            a, b = (p for p in t if p != c)
            covered[a][b] = covered[b][a] = on
            s_point = third[_pair(a, b)]
            if on:
                used[c].add(s_point)
            else:
                used[c].discard(s_point)

    def candidates(a: int, b: int) -> List[Triple]:
        out = []
        for c in range(v):
            if c in (a, b) or covered[a][c] or covered[b][c]:
                continue
            t = tuple(sorted((a, b, c)))
            if allowed(t):
                out.append(t)
        return out

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            return False
        best = None
        for a in range(v):
            for b in range(a + 1, v):
                if covered[a][b]:
                    continue
                options = candidates(a, b)
                if best is None or len(options) < len(best):
                    best = options
                    if not options:
                        return False
        if best is None:
            return True
        rng.shuffle(best)
        for t in best:
            apply(t, True)
            chosen.append(t)
            if rec():
                return True
            chosen.pop()
            apply(t, False)
        return False

    return frozenset(chosen) if rec() else None


def search_super_orthogonal(v: int, seed: Optional[int] = None, limit: Optional[int] = None,
                            attempts: Optional[int] = None) -> Optional[Tuple[FrozenSet[Triple], FrozenSet[Triple]]]:
    """
    Find a super-orthogonal pair of STS(v)

    Each attempt draws a random S and backtracks on S'. The result is re-verified.

    Returns:
        (S, S') or None after the attempts are exhausted
    """
    if seed is None:
        raise ValueError("the super-orthogonal search needs an explicit seed")
    rng = random.Random(seed)
    limit = limit or SEARCH_SETTINGS['sts_node_limit']
    attempts = attempts or SEARCH_SETTINGS['sts_attempts']
    for attempt in range(attempts):
        S = random_sts(v, rng)
        S2 = _complete_super_orthogonal(v, S, rng, limit)
        if S2 is None:
            logging.debug(f"🔄 Attempt {attempt + 1}: no partner within {limit} nodes")
            continue
        ok, witness = sts_super_orthogonal(range(v), S, S2)
        if not ok:
            raise AssertionError(f"search produced a pair that is not super-orthogonal: {witness}")
        logging.info(f"✓ Super-orthogonal STS({v}) pair found on attempt {attempt + 1}")
        return S, S2
    return None
