"""
Searches for Heffter rulers, Heffter difference packings and net seeds,
plus the Weil-type threshold calculator.

A Heffter ruler of size k over F_q (q = 3 mod 4) is a zero-sum k-tuple of squares
whose image under phi (phi(rho^m) = m, into Z_v with v = (q-1)/2) is a modular
Golomb ruler hitting every residue class mod k.
"""
import logging
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from multiprocessing import Pool
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from config import SEARCH_SETTINGS
from construct import NetSeed, net_parameter, verify_net_seed
from designs import DesignReport, fmt_block, is_simple, order_for_simplicity
from errors import ElementNotSquare, NoDivisibility, SeedInvariantViolated, WrongCongruence
from field_core import FieldCtx, FieldSpec, SquareCoords, cyclotomic_class, field_from_order, field_from_spec
from utils import admissible_prime_powers, prime_power_parts, progress


@dataclass(frozen=True)
class Ruler:
    """An ordered ruler with its phi image and phi-difference set in Z_v"""
    elements: Tuple[int, ...]
    phi: Tuple[int, ...]
    differences: FrozenSet[int]

    @property
    def k(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class DifferencePacking:
    """Heffter rulers over one field whose difference lists are pairwise disjoint"""
    rulers: Tuple[Ruler, ...]

    @property
    def differences(self) -> FrozenSet[int]:
        return frozenset().union(*(r.differences for r in self.rulers)) if self.rulers else frozenset()


def phi_differences(phis: Sequence[int], v: int) -> List[int]:
    return [(a - b) % v for a, b in combinations(phis, 2)] + [(b - a) % v for a, b in combinations(phis, 2)]


def make_ruler(coords: SquareCoords, elements: Sequence[int]) -> Ruler:
    phis = tuple(coords.phi(b) for b in elements)
    return Ruler(elements=tuple(elements), phi=phis, differences=frozenset(phi_differences(phis, coords.v)))


def _require_ruler_field(ctx: FieldCtx, k: int) -> int:
    if ctx.q % 4 != 3:
        raise WrongCongruence(f"Heffter rulers need q = 3 (mod 4), got q = {ctx.q}")
    v = (ctx.q - 1) // 2
    if k < 1 or v % k != 0:
        raise NoDivisibility(f"k = {k} does not divide v = {v}")
    return v


def verify_ruler(ctx: FieldCtx, k: int, B: Sequence[int], rho: Optional[int] = None,
                 require_simple: bool = False) -> DesignReport:
    """
    Check conditions H1 (Golomb), H2 (resolvable), H3 (zero-sum) and simplicity

    Args:
        ctx: Field with q = 3 (mod 4)
        k: Ruler size, a divisor of (q-1)/2
        B: Ordered ruler
        rho: Generator of the squares defining phi
        require_simple: Treat a non-simple given order as a violation instead of a note

    Returns:
        DesignReport of kind 'ruler'
    """
    v = _require_ruler_field(ctx, k)
    coords = SquareCoords(ctx, rho)
    B = tuple(B)
    for b in B:
        if b == 0 or not ctx.contains(b) or not ctx.is_square(b):
            raise ElementNotSquare(f"ruler element {b} is not a nonzero square mod {ctx.q}")

    report = DesignReport(kind="ruler", v=v, sizes=(k,), r=k)
    if len(B) != k:
        report.add(f"length {len(B)} differs from k = {k}")
    if len(set(B)) != len(B):
        report.add("repeated elements")

    phis = [coords.phi(b) for b in B]
    repeated = {d: c for d, c in Counter(phi_differences(phis, v)).items() if c > 1}
    for d, c in sorted(repeated.items()):
        report.add(f"H1: phi-difference {d} occurs {c} times")
    missing = sorted(set(range(k)) - {ph % k for ph in phis})
    if missing:
        report.add(f"H2: residues {missing} mod {k} are not hit")
    total = ctx.sum(B)
    if total != 0:
        report.add(f"H3: sum is {total}, not 0")

    if total == 0 and len(set(B)) == len(B) and len(B) >= 3:
        simple = is_simple(ctx, B)
        report.params['simple'] = "yes" if simple else "no"
        if not simple:
            alternative = order_for_simplicity(ctx, B)
            message = ("given order is not simple; "
                       + (f"simple ordering {fmt_block(alternative)} exists" if alternative else "no simple ordering exists"))
            if require_simple or alternative is None:
                report.add(message)
            else:
                report.notes.append(message)
    report.params['phi'] = " ".join(str(ph) for ph in phis)
    return report


def verify_packing(ctx: FieldCtx, rulers: Sequence[Sequence[int]], rho: Optional[int] = None) -> DesignReport:
    """Verify every ruler and the pairwise disjointness of their difference lists"""
    if ctx.q % 4 != 3:
        raise WrongCongruence(f"Heffter packings need q = 3 (mod 4), got q = {ctx.q}")
    v = (ctx.q - 1) // 2
    report = DesignReport(kind="packing", v=v, sizes=tuple(len(B) for B in rulers),
                          r=sum(len(B) for B in rulers))
    coords = SquareCoords(ctx, rho)
    diff_sets = []
    for i, B in enumerate(rulers):
        try:
            report.absorb(verify_ruler(ctx, len(B), B, rho), prefix=f"ruler {i}: ")
        except (NoDivisibility, ElementNotSquare) as e:
            report.add(f"ruler {i}: {e}")
            diff_sets.append(frozenset())
            continue
        diff_sets.append(make_ruler(coords, B).differences)
    for (i, D1), (j, D2) in combinations(enumerate(diff_sets), 2):
        shared = sorted(D1 & D2)
        if shared:
            report.add(f"rulers {i} and {j} share phi-differences {shared[:10]}")
    return report


def canonical_form(ctx: FieldCtx, elements: Sequence[int]) -> Tuple[int, ...]:
    """Least sorted code sequence in the orbit {B t : t a square}"""
    return min(tuple(sorted(ctx.mul(x, ctx.inv(b)) for x in elements)) for b in elements)


def ruler_table_row(ctx: FieldCtx, ruler: Sequence[int]) -> Dict[str, Fraction]:
    """
    Densities of the developed configuration and of its coset extension

    Returns:
        {'density': (k^2-k)/(v-1), 'extended': (k^2-k + v/k - 1)/(v-1)}
    """
    k = len(ruler)
    v = _require_ruler_field(ctx, k)
    return {
        'density': Fraction(k * k - k, v - 1),
        'extended': Fraction(k * k - k + v // k - 1, v - 1),
    }


# -- ruler search ----------------------------------------------------------------

def _square_classes(ctx: FieldCtx, coords: SquareCoords, k: int) -> List[List[int]]:
    """Squares split by phi mod k, each list in increasing dlog order"""
    classes: List[List[int]] = [[] for _ in range(k)]
    for m in range(coords.v):
        b = ctx.elem(2 * m)
        classes[coords.phi(b) % k].append(b)
    return classes


def _ruler_dfs(ctx: FieldCtx, coords: SquareCoords, k: int, classes: List[List[int]],
               prefix: Sequence[int], first_only: bool,
               accept: Optional[Callable[[Tuple[int, ...]], bool]] = None) -> List[Tuple[int, ...]]:
    """
    Depth-first completion of a normalized ruler (1, b_1, ..., b_{k-1}) with b_i in class i

    The last element is forced as minus the sum of the others. Completed candidates
    rejected by accept are dropped and the search goes on.
    """
    v = coords.v
    used = bytearray(v)
    chosen: List[int] = []
    phis: List[int] = []
    results: List[Tuple[int, ...]] = []

    def new_diffs(ph: int) -> Optional[List[int]]:
        fresh = []
        for other in phis:
            for d in ((ph - other) % v, (other - ph) % v):
                if used[d]:
                    return None
                fresh.append(d)
        if len(set(fresh)) != len(fresh):
            return None
        return fresh

    def push(b: int, ph: int, fresh: List[int]):
        for d in fresh:
            used[d] = 1
        chosen.append(b)
        phis.append(ph)

    def pop(fresh: List[int]):
        for d in fresh:
            used[d] = 0
        chosen.pop()
        phis.pop()

    for b in prefix:
        ph = coords.phi(b)
        fresh = new_diffs(ph)
        if fresh is None:
            return []
        push(b, ph, fresh)

    def rec(total: int):
        pos = len(chosen)
        if pos == k - 1:
            x = ctx.neg(total)
            if x == 0 or not ctx.is_square(x):
                return
            ph = coords.phi(x)
            if ph % k != k - 1 or new_diffs(ph) is None:
                return
            candidate = tuple(chosen) + (x,)
            if accept is None or accept(candidate):
                results.append(candidate)
            return
        for b in classes[pos]:
            ph = coords.phi(b)
            fresh = new_diffs(ph)
            if fresh is None:
                continue
            push(b, ph, fresh)
            rec(ctx.add(total, b))
            pop(fresh)
            if first_only and results:
                return

    if k == 1:
        return [tuple(chosen)] if ctx.sum(chosen) == 0 else []
    rec(ctx.sum(chosen))
    return results


def _ruler_branch(task: Tuple[FieldSpec, int, Optional[int], Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    spec, k, rho, prefix = task
    ctx = field_from_spec(spec)
    coords = SquareCoords(ctx, rho)
    return _ruler_dfs(ctx, coords, k, _square_classes(ctx, coords, k), prefix, first_only=False)


def _as_simple_ruler(ctx: FieldCtx, coords: SquareCoords, found: Tuple[int, ...]) -> Optional[Ruler]:
    ordering = found if is_simple(ctx, found) else order_for_simplicity(ctx, found)
    if ordering is None:
        logging.debug(f"Skipping {fmt_block(found)}: no simple ordering")
        return None
    return make_ruler(coords, ordering)


def search_rulers(ctx: FieldCtx, k: int, mode: str = "first", rho: Optional[int] = None,
                  threads: int = 1) -> List[Ruler]:
    """
    Backtracking search for normalized Heffter rulers (b_0 = 1)

    One representative is chosen per class of squares mod k; duplicate phi-differences
    prune the tree and the last element is solved for.

    Args:
        ctx: Field with q = 3 (mod 4)
        k: Ruler size dividing (q-1)/2
        mode: 'first' stops at the first ruler; 'all' returns every normalized ruler
        rho: Generator of the squares
        threads: Worker processes for mode 'all' (output is independent of this)

    Returns:
        List of rulers in increasing dlog order
    """
    if mode not in ("first", "all"):
        raise ValueError(f"unknown ruler search mode {mode!r}")
    _require_ruler_field(ctx, k)
    if k < 3:
        raise NoDivisibility(f"rulers need k >= 3, got {k}")
    coords = SquareCoords(ctx, rho)
    classes = _square_classes(ctx, coords, k)

    if mode == "first" or threads <= 1:
        found = _ruler_dfs(ctx, coords, k, classes, (1,), first_only=(mode == "first"),
                           accept=(lambda c: _as_simple_ruler(ctx, coords, c) is not None) if mode == "first" else None)
    else:
        tasks = [(ctx.spec, k, rho, (1, b)) for b in classes[1]]
        found = []
        with Pool(threads) as pool:
            for part in progress(pool.imap(_ruler_branch, tasks), desc=f"rulers q={ctx.q} k={k}", total=len(tasks)):
                found.extend(part)

    rulers = []
    for candidate in found:
        ruler = _as_simple_ruler(ctx, coords, candidate)
        if ruler is not None:
            rulers.append(ruler)
            if mode == "first":
                break
    logging.debug(f"✓ q={ctx.q} k={k}: {len(rulers)} normalized ruler(s)")
    return rulers


def enumerate_inequivalent_rulers(ctx: FieldCtx, k: int = 3, rho: Optional[int] = None,
                                  threads: int = 1) -> Tuple[int, List[Ruler]]:
    """
    Group all rulers into multiplicative orbits and return one canonical ruler per orbit

    Returns:
        (number of orbits, simple-ordered canonical representatives in canonical order)
    """
    coords = SquareCoords(ctx, rho)
    rulers = search_rulers(ctx, k, "all", rho, threads)
    forms = sorted({canonical_form(ctx, r.elements) for r in rulers})
    if len(rulers) != k * len(forms):
        raise AssertionError(f"{len(rulers)} normalized rulers do not split into orbits of size {k}")
    reps = [make_ruler(coords, order_for_simplicity(ctx, form)) for form in forms]
    return len(forms), reps


def rulers_equivalent(ctx: FieldCtx, A: Sequence[int], B: Sequence[int]) -> bool:
    return canonical_form(ctx, A) == canonical_form(ctx, B)


def admissible_ruler_orders(k: int, qmax: int, qmin: int = 2) -> List[int]:
    """Prime powers qmin <= q < qmax with q = 2k+1 (mod 4k)"""
    return admissible_prime_powers(4 * k, 2 * k + 1, qmax, qmin)


def inequivalent_table(k: int, qmax: int, checkpoint=None, threads: int = 1,
                       qmin: int = 2) -> List[Tuple[int, int]]:
    """
    Count inequivalent Heffter rulers for every admissible q in [qmin, qmax)

    Args:
        k: Ruler size
        qmax: Exclusive bound on q
        checkpoint: Optional CheckpointManager; finished q values are skipped on resume
        threads: Worker processes per field

    Returns:
        List of (q, count)
    """
    rows = []
    for q in progress(admissible_ruler_orders(k, qmax, qmin), desc=f"inequivalent k={k}"):
        key = str(q)
        if checkpoint is not None and checkpoint.is_item_complete(key):
            rows.append((q, int(checkpoint.get_result(key))))
            continue
        count, _ = enumerate_inequivalent_rulers(field_from_order(q), k, threads=threads)
        logging.info(f"✓ q={q}: {count} inequivalent ruler(s)")
        rows.append((q, count))
        if checkpoint is not None:
            checkpoint.mark_item_complete(key, count)
    if checkpoint is not None:
        checkpoint.mark_all_complete()
    return rows


# -- packings --------------------------------------------------------------------

def _exhaustive_packing(ctx: FieldCtx, k: int, n: int, rho: Optional[int], threads: int) -> Optional[DifferencePacking]:
    _, reps = enumerate_inequivalent_rulers(ctx, k, rho, threads)
    chosen: List[Ruler] = []

    def rec(start: int, used: FrozenSet[int]) -> bool:
        if len(chosen) == n:
            return True
        for i in range(start, len(reps)):
            if reps[i].differences & used:
                continue
            chosen.append(reps[i])
            if rec(i + 1, used | reps[i].differences):
                return True
            chosen.pop()
        return False

    return DifferencePacking(tuple(chosen)) if rec(0, frozenset()) else None


def _greedy_ruler(ctx: FieldCtx, coords: SquareCoords, k: int, forbidden: Set[int],
                  rng: Optional[random.Random]) -> Optional[Tuple[int, ...]]:
    """
    Build one ruler following the greedy scheme: b_i from C^{2k}_{2i} for i < k-2,
    then x from C^{2k}_{2k-4} with x + s in C^{2k}_{k-2}, closing with -x - s
    """
    v = coords.v
    classes = [list(cyclotomic_class(ctx, 2 * k, 2 * i, ordered=True)) for i in range(k)]
    if rng is not None:
        for cls in classes:
            rng.shuffle(cls)

    chosen: List[int] = []
    phis: List[int] = []
    own: Set[int] = set()
    sums: List[int] = []

    def fresh_diffs(ph: int) -> Optional[List[int]]:
        fresh = [d for other in phis for d in ((ph - other) % v, (other - ph) % v)]
        if len(set(fresh)) != len(fresh) or any(d in forbidden or d in own for d in fresh):
            return None
        return fresh

    for j in range(k - 2):
        for b in classes[j]:
            ph = coords.phi(b)
            if ph in forbidden or ph in own:
                continue
            new_sum = ctx.add(sums[-1], b) if sums else b
            if new_sum == 0 or new_sum in sums:
                continue
            fresh = fresh_diffs(ph)
            if fresh is None:
                continue
            chosen.append(b)
            phis.append(ph)
            own.update(fresh)
            sums.append(new_sum)
            break
        else:
            return None

    s = sums[-1]
    for x in classes[k - 2]:
        y = ctx.add(x, s)
        if y == 0 or ctx.dlog(y) % (2 * k) != k - 2:
            continue
        if y in sums:
            continue
        last = ctx.neg(y)
        ph_x, ph_last = coords.phi(x), coords.phi(last)
        fresh_x = fresh_diffs(ph_x)
        if fresh_x is None:
            continue
        phis.append(ph_x)
        fresh_last = fresh_diffs(ph_last)
        phis.pop()
        if fresh_last is None or set(fresh_x) & set(fresh_last) or (ph_last - ph_x) % v in fresh_x:
            continue
        candidate = tuple(chosen) + (x, last)
        if is_simple(ctx, candidate) and verify_ruler(ctx, k, candidate, coords.rho).valid:
            diffs = make_ruler(coords, candidate).differences
            if not diffs & forbidden:
                return candidate
    return None


def search_packing(ctx: FieldCtx, k: int, n: int, mode: str = "exhaustive", seed: Optional[int] = None,
                   rho: Optional[int] = None, threads: int = 1) -> Optional[DifferencePacking]:
    """
    Find n rulers of size k with pairwise disjoint difference lists

    Args:
        mode: 'exhaustive' backtracks over canonical orbit representatives;
              'greedy' builds rulers one at a time (deterministic given seed)

    Returns:
        DifferencePacking or None when the mode finds nothing
    """
    _require_ruler_field(ctx, k)
    coords = SquareCoords(ctx, rho)
    if n == 0:
        return DifferencePacking(())
    if mode == "exhaustive":
        packing = _exhaustive_packing(ctx, k, n, rho, threads)
    elif mode == "greedy":
        rng = random.Random(seed) if seed is not None else None
        forbidden: Set[int] = set()
        rulers = []
        for i in range(n):
            found = _greedy_ruler(ctx, coords, k, forbidden, rng)
            if found is None:
                logging.info(f"❌ Greedy construction stalled at ruler {i + 1} of {n}")
                return None
            ruler = make_ruler(coords, found)
            forbidden |= ruler.differences
            rulers.append(ruler)
        packing = DifferencePacking(tuple(rulers))
    else:
        raise ValueError(f"unknown packing search mode {mode!r}")

    if packing is not None:
        report = verify_packing(ctx, [r.elements for r in packing.rulers], rho)
        if not report.valid:
            raise AssertionError(f"search produced an invalid packing: {report.violations[0]}")
    return packing


# -- Weil-type bound -------------------------------------------------------------

@dataclass(frozen=True)
class WeilBound:
    """Exact bracket q_low <= Q(2k, k^2(k-1)n) <= q_high and the simple bound 8k^5 n"""
    k: int
    n: int
    q_low: Fraction
    q_high: Fraction
    simple_bound: int

    @property
    def below(self) -> bool:
        return self.q_high < self.simple_bound


def weil_threshold(k: int, n: int) -> WeilBound:
    """
    Evaluate Q(e, t) = 1/4 [(e-1)^2 + sqrt((e-1)^4 + 4e(et+2))]^2 at e = 2k, t = k^2(k-1)n

    The square root is bracketed with integer square roots at increasing scale until
    the comparison with 8k^5 n is decided.
    """
    if k < 3 or k % 2 == 0 or n < 1:
        raise ValueError(f"need odd k >= 3 and n >= 1, got k={k}, n={n}")
    e = 2 * k
    t = k * k * (k - 1) * n
    A = (e - 1) ** 2
    D = (e - 1) ** 4 + 4 * e * (e * t + 2)
    bound = 8 * k ** 5 * n
    scale = 10 ** 6
    while True:
        s = isqrt(D * scale * scale)
        exact = s * s == D * scale * scale
        low = Fraction(1, 4) * (A + Fraction(s, scale)) ** 2
        high = low if exact else Fraction(1, 4) * (A + Fraction(s + 1, scale)) ** 2
        if high < bound or low >= bound or scale > 10 ** 40:
            break
        scale *= 10 ** 6
    result = WeilBound(k=k, n=n, q_low=low, q_high=high, simple_bound=bound)
    if not result.below:
        raise AssertionError(f"Q(2k, k^2(k-1)n) is not below 8k^5n for k={k}, n={n}")
    return result


def min_guaranteed_prime_power(k: int, n: int) -> int:
    """Least prime power q = 2k+1 (mod 4k) with q > 8k^5 n"""
    bound = 8 * k ** 5 * n
    q = bound + 1 + ((2 * k + 1 - (bound + 1)) % (4 * k))
    while prime_power_parts(q) is None:
        q += 4 * k
    return q


# -- net seeds -------------------------------------------------------------------

class _SeedSolver:
    """Solves the last three coordinates of Y from the three linear conditions"""

    def __init__(self, ctx: FieldCtx, x: int, m: int):
        self.ctx = ctx
        self.m = m
        self.xp = [ctx.pow(x, i) for i in range(m)]
        self.xm = [ctx.pow(x, -i) for i in range(m)]
        tail = (m - 3, m - 2, m - 1)
        GF = ctx.galois_field()
        M = GF([[1, 1, 1], [self.xp[a] for a in tail], [self.xm[a] for a in tail]])
        self.tail = tail
        self.inverse = [[int(c) for c in row] for row in np.linalg.inv(M)]

    def complete(self, sums: Tuple[int, int, int]) -> Optional[Tuple[int, int, int]]:
        ctx = self.ctx
        rhs = [ctx.neg(s) for s in sums]
        ys = []
        for row, pos in zip(self.inverse, self.tail):
            y = ctx.sum(ctx.mul(c, r) for c, r in zip(row, rhs))
            if y == 0 or ctx.dlog(y) % self.m != pos:
                return None
            ys.append(y)
        return tuple(ys)

    def extend(self, sums: Tuple[int, int, int], i: int, y: int) -> Tuple[int, int, int]:
        ctx = self.ctx
        return (ctx.add(sums[0], y), ctx.add(sums[1], ctx.mul(self.xp[i], y)), ctx.add(sums[2], ctx.mul(self.xm[i], y)))


def search_net_seed(ctx: FieldCtx, strategy: str = "backtrack", seed: Optional[int] = None,
                    limit: Optional[int] = None, x: Optional[int] = None) -> Optional[NetSeed]:
    """
    Search a zero-sum system of coset representatives Y with sigma = sigma' = 0

    y_i is taken from the i-th coset of the 3n-th powers with y_0 = 1. The first
    3n-3 coordinates are enumerated and the last three solved for exactly.

    The search is incomplete: seeds whose i-th entry lies in another coset (a permuted
    system of representatives) are never visited, so None does not prove that no seed exists.

    Args:
        ctx: Field with q = 18n^2 + 1, n odd and n > 1
        strategy: 'backtrack' (lexicographic in dlog) or 'randomized' (seeded random prefixes)
        seed: Random seed, required by the randomized strategy
        limit: Maximum number of prefixes examined
        x: Primitive 3n-th root of unity; g^(6n) by default

    Returns:
        A verified NetSeed, or None when the limit is exhausted
    """
    n = net_parameter(ctx.q)
    m = 3 * n
    if x is None:
        x = ctx.elem((ctx.q - 1) // m)
    if ctx.order_of(x) != m:
        raise SeedInvariantViolated("x-order", f"{x} has order {ctx.order_of(x)}, not {m}")
    cosets = [list(cyclotomic_class(ctx, m, i, ordered=True)) for i in range(m)]
    solver = _SeedSolver(ctx, x, m)
    free = list(range(1, m - 3))
    visited = 0

    def finish(prefix: List[int], sums) -> Optional[NetSeed]:
        tail = solver.complete(sums)
        if tail is None:
            return None
        return verify_net_seed(ctx, x, tuple(prefix) + tail)

    start = solver.extend((0, 0, 0), 0, 1)
    if strategy == "backtrack":
        prefix = [1]

        def rec(idx: int, sums) -> Optional[NetSeed]:
            nonlocal visited
            if idx == len(free):
                visited += 1
                return finish(prefix, sums)
            pos = free[idx]
            for y in cosets[pos]:
                if limit is not None and visited >= limit:
                    return None
                prefix.append(y)
                found = rec(idx + 1, solver.extend(sums, pos, y))
                prefix.pop()
                if found is not None:
                    return found
            return None

        return rec(0, start)

    if strategy == "randomized":
        if seed is None:
            raise ValueError("the randomized net seed search needs an explicit seed")
        rng = random.Random(seed)
        budget = limit if limit is not None else SEARCH_SETTINGS['netseed_random_trials']
        for _ in range(budget):
            prefix = [1]
            sums = start
            for pos in free:
                y = rng.choice(cosets[pos])
                prefix.append(y)
                sums = solver.extend(sums, pos, y)
            found = finish(prefix, sums)
            if found is not None:
                return found
        return None

    raise ValueError(f"unknown net seed strategy {strategy!r}")
