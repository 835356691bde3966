"""
Deterministic constructions of Heffter spaces

- partial_partition_space: cosets of pairwise coprime root-of-unity groups inside the squares
- develop_packing / extend_with_cosets: development of a Heffter difference packing
- slope_net, net_via_roots, net_ag2_11: nets labelled by f(i, j) = x^i y_j over Z_m x Z_m
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from math import gcd, isqrt, prod
from typing import List, Optional, Sequence, Tuple, Union

from catalog import (
    AG211_GENERATOR, AG211_MODULUS, AG211_N, AG211_P, AG211_SLOPES, AG211_X_EXPONENT,
    AG211_Y_EXPONENTS, INF
)
from designs import HeffterSpace, HeffterSystem, OrderedBlock, assemble_space, verify_heffter_space
from errors import (
    IdentityViolated, InvalidPacking, InvalidSpace, NotConstantBlockSize, NotCoprime,
    SeedInvariantViolated, WrongCongruence, WrongForm, WrongProduct
)
from field_core import FieldCtx, SquareCoords, build_field, format_elem, half_set, roots_of_unity
from utils import prime_power_parts

Slope = Union[int, str]


def _require_q_3_mod_4(ctx: FieldCtx):
    if ctx.q % 4 != 3:
        raise WrongCongruence(f"the squares of F_{ctx.q} form a half-set only when q = 3 (mod 4)")


def _checked(ctx: FieldCtx, space: HeffterSpace, check: bool) -> HeffterSpace:
    if not check:
        return space
    report = verify_heffter_space(ctx, space)
    if not report.valid:
        raise InvalidSpace(f"constructed {report.kind} fails verification: {report.violations[0]}")
    logging.debug(f"✓ Constructed {report.kind} v={report.v} sizes={report.sizes_text()} r={report.r}")
    return space


def partial_partition_space(ctx: FieldCtx, sizes: Sequence[int], check: bool = True) -> HeffterSpace:
    """
    Classes are the cosets of the k_i-th roots of unity inside the squares

    Args:
        ctx: Field with q = 3 (mod 4)
        sizes: Pairwise coprime odd block sizes with product (q-1)/2

    Returns:
        (v, {k_1, ..., k_r}) Heffter space with classes P1..Pr
    """
    _require_q_3_mod_4(ctx)
    sizes = [int(k) for k in sizes]
    v = (ctx.q - 1) // 2
    for a, b in combinations(sizes, 2):
        if gcd(a, b) != 1:
            raise NotCoprime(f"block sizes {a} and {b} are not coprime")
    if prod(sizes) != v:
        raise WrongProduct(f"product of {sizes} is {prod(sizes)}, not v = {v}")
    if any(k < 3 for k in sizes):
        raise WrongProduct(f"block sizes must be at least 3, got {sizes}")

    V = half_set(ctx)
    squares = [ctx.elem(2 * m) for m in range(v)]
    classes = []
    for c, k in enumerate(sizes):
        roots = roots_of_unity(ctx, k)
        covered = set()
        blocks = []
        for t in squares:
            if t in covered:
                continue
            block = tuple(ctx.mul(t, s) for s in roots)
            if ctx.sum(block) != 0:
                raise InvalidSpace(f"coset {block} of the {k}-th roots of unity does not sum to 0")
            covered.update(block)
            blocks.append(block)
        classes.append(HeffterSystem(halfset=V, blocks=tuple(blocks), name=f"P{c + 1}"))
    return _checked(ctx, assemble_space(classes), check)


def _ruler_tuples(packing) -> List[OrderedBlock]:
    rulers = packing.rulers if hasattr(packing, "rulers") else packing
    return [tuple(r.elements) if hasattr(r, "elements") else tuple(r) for r in rulers]


def develop_packing(ctx: FieldCtx, packing, rho: Optional[int] = None, check: bool = True) -> HeffterSpace:
    """
    Develop each ruler B of size k into k parallel classes {B t s : s in S} for t in T

    S is the subgroup of k-th powers of the squares and T = {rho^j : 0 <= j < k}.
    Classes come out ruler by ruler, then in T order.

    Args:
        ctx: Field with q = 3 (mod 4)
        packing: DifferencePacking, or a list of ordered rulers
        rho: Generator of the squares (g^2 by default)
        check: Verify the packing first and the resulting space afterwards

    Returns:
        (v, {k_1^{k_1}, ...}) Heffter space
    """
    _require_q_3_mod_4(ctx)
    rulers = _ruler_tuples(packing)
    coords = SquareCoords(ctx, rho)
    v = coords.v
    V = half_set(ctx)
    if not rulers:
        return HeffterSpace(halfset=V, classes=())
    if check:
        from search import verify_packing
        report = verify_packing(ctx, rulers, rho)
        if not report.valid:
            raise InvalidPacking(report.violations[0])

    classes = []
    for B in rulers:
        k = len(B)
        S = [coords.power(k * j) for j in range(v // k)]
        for j in range(k):
            t = coords.power(j)
            scaled = [ctx.mul(b, t) for b in B]
            blocks = tuple(tuple(ctx.mul(b, s) for b in scaled) for s in S)
            classes.append(HeffterSystem(halfset=V, blocks=blocks, name=f"P{len(classes) + 1}"))
    logging.debug(f"Developed {len(rulers)} ruler(s) into {len(classes)} classes over F_{ctx.q}")
    return _checked(ctx, HeffterSpace(halfset=V, classes=tuple(classes)), check)


def extend_with_cosets(ctx: FieldCtx, space: HeffterSpace, rho: Optional[int] = None,
                       check: bool = True) -> HeffterSpace:
    """Append the class C of cosets of the index-k subgroup of the squares"""
    k = space.k
    if k is None:
        raise NotConstantBlockSize(f"coset extension needs one block size, found {sorted({len(b) for b in space.blocks})}")
    coords = SquareCoords(ctx, rho)
    v = coords.v
    if v % k != 0:
        raise NotConstantBlockSize(f"block size {k} does not divide v = {v}")
    S = [coords.power(k * j) for j in range(v // k)]
    blocks = tuple(tuple(ctx.mul(coords.power(j), s) for s in S) for j in range(k))
    cosets = HeffterSystem(halfset=space.halfset, blocks=blocks, name="C")
    return _checked(ctx, HeffterSpace(halfset=space.halfset, classes=space.classes + (cosets,)), check)


# -- nets ----------------------------------------------------------------------

@dataclass(frozen=True)
class NetSeed:
    """x of order 3n and Y, one element per coset of the 3n-th powers, with all three sums zero"""
    q: int
    n: int
    x: int
    Y: Tuple[int, ...]
    sigma: int = 0
    sigma_prime: int = 0


def net_parameter(q: int) -> int:
    """n such that q = 18n^2 + 1 with n odd and n > 1"""
    if prime_power_parts(q) is None:
        raise WrongForm(f"{q} is not a prime power")
    if (q - 1) % 18 != 0 or isqrt((q - 1) // 18) ** 2 != (q - 1) // 18:
        raise WrongForm(f"q = {q} is not of the form 18n^2 + 1")
    n = isqrt((q - 1) // 18)
    if n % 2 == 0:
        raise WrongForm(f"q = 18n^2 + 1 with n = {n} even")
    if n == 1:
        raise WrongForm("n = 1 is not an admissible net order")
    return n


def verify_net_seed(ctx: FieldCtx, x: int, Y: Sequence[int]) -> NetSeed:
    """
    Check the seed invariants

    Raises:
        SeedInvariantViolated with which in x-order, coset-coverage, sum, sigma, sigma-prime
    """
    n = net_parameter(ctx.q)
    m = 3 * n
    Y = tuple(int(y) for y in Y)
    if x == 0 or not ctx.contains(x) or ctx.order_of(x) != m:
        raise SeedInvariantViolated("x-order", f"{x} is not a primitive {m}-th root of unity")
    if len(Y) != m or any(y == 0 or not ctx.contains(y) for y in Y):
        raise SeedInvariantViolated("coset-coverage", f"Y must hold {m} nonzero elements")
    residues = sorted(ctx.dlog(y) % m for y in Y)
    if residues != list(range(m)):
        raise SeedInvariantViolated("coset-coverage", f"dlogs of Y mod {m} are {residues}")
    if ctx.sum(Y) != 0:
        raise SeedInvariantViolated("sum", f"sum of Y is {ctx.sum(Y)}")
    sigma = ctx.sum(ctx.mul(ctx.pow(x, i), y) for i, y in enumerate(Y))
    if sigma != 0:
        raise SeedInvariantViolated("sigma", f"sum of x^i y_i is {sigma}")
    sigma_prime = ctx.sum(ctx.mul(ctx.pow(x, -i), y) for i, y in enumerate(Y))
    if sigma_prime != 0:
        raise SeedInvariantViolated("sigma-prime", f"sum of x^-i y_i is {sigma_prime}")
    return NetSeed(q=ctx.q, n=n, x=x, Y=Y)


def labeling_matrix(ctx: FieldCtx, x: int, Y: Sequence[int]) -> List[List[int]]:
    """The m x m matrix with entry (i, j) = x^i y_j"""
    powers = [ctx.pow(x, i) for i in range(len(Y))]
    return [[ctx.mul(xi, y) for y in Y] for xi in powers]


def format_matrix(ctx: FieldCtx, matrix: List[List[int]], coefficients: bool = False) -> str:
    """One row per line, space-separated codes (or coefficient vectors)"""
    render = (lambda c: format_elem(ctx, c)) if coefficients else str
    return "\n".join(" ".join(render(c) for c in row) for row in matrix) + "\n"


def slope_blocks(matrix: List[List[int]], slope: Slope) -> Tuple[OrderedBlock, ...]:
    """Lines of AG(2, m) with the given slope, read through f(i, j) = matrix[i][j]"""
    m = len(matrix)
    if slope == INF:
        return tuple(tuple(matrix[i][j] for j in range(m)) for i in range(m))
    s = int(slope) % m
    return tuple(tuple(matrix[i][(s * i + j) % m] for i in range(m)) for j in range(m))


def admissible_slopes(ctx: FieldCtx, x: int, Y: Sequence[int]) -> List[Slope]:
    """Every slope whose lines are all zero-sum under the labeling"""
    matrix = labeling_matrix(ctx, x, Y)
    slopes: List[Slope] = [s for s in range(len(Y))
                           if all(ctx.sum(block) == 0 for block in slope_blocks(matrix, s))]
    if ctx.sum(Y) == 0:
        slopes.append(INF)
    return slopes


def slope_net(ctx: FieldCtx, x: int, Y: Sequence[int], slopes: Sequence[Slope],
              names: Optional[Sequence[str]] = None, check: bool = True) -> HeffterSpace:
    """
    The net whose classes are the lines of the given slopes, labelled by x^i y_j

    Raises:
        InvalidSpace if the labeling is not injective or misses a half-set
        IdentityViolated naming the first slope with a nonzero line
    """
    m = len(Y)
    matrix = labeling_matrix(ctx, x, Y)
    points = [c for row in matrix for c in row]
    if len(set(points)) != m * m:
        raise InvalidSpace(f"labeling x^i y_j is not injective ({len(set(points))} of {m * m} points distinct)")
    V = half_set(ctx, points)

    classes = []
    for idx, s in enumerate(slopes):
        blocks = slope_blocks(matrix, s)
        for j, block in enumerate(blocks):
            total = ctx.sum(block)
            if total != 0:
                raise IdentityViolated(s, f"line {j} of slope {s} sums to {total}")
        name = names[idx] if names else (f"s{s}")
        classes.append(HeffterSystem(halfset=V, blocks=blocks, name=name))
    return _checked(ctx, HeffterSpace(halfset=V, classes=tuple(classes)), check)


def net_via_roots(ctx: FieldCtx, seed: NetSeed, check: bool = True) -> Tuple[HeffterSpace, List[List[int]]]:
    """
    The (9n^2, 3n; 4) net from a seed: rows, right diagonals, left diagonals and columns

    Returns:
        (net, labeling matrix)
    """
    seed = verify_net_seed(ctx, seed.x, seed.Y)
    m = 3 * seed.n
    net = slope_net(ctx, seed.x, seed.Y, (INF, 1, m - 1, 0), names=("P1", "P2", "P3", "P4"), check=check)
    if net.v != m * m:
        raise InvalidSpace(f"net has {net.v} points, expected {m * m}")
    return net, labeling_matrix(ctx, seed.x, seed.Y)


@dataclass(frozen=True)
class SlopeLabeling:
    """x = g^a and Y = (g^{e_0}, ..., g^{e_{m-1}}) over a fixed field, with the chosen slopes"""
    ctx: FieldCtx
    x_exponent: int
    y_exponents: Tuple[int, ...]
    slopes: Tuple[Slope, ...]

    @property
    def x(self) -> int:
        return self.ctx.elem(self.x_exponent)

    @property
    def Y(self) -> Tuple[int, ...]:
        return tuple(self.ctx.elem(e) for e in self.y_exponents)

    @property
    def m(self) -> int:
        return len(self.y_exponents)


def ag211_labeling() -> SlopeLabeling:
    """The labeling of AG(2, 11) over GF(3^5) with nine zero-sum slopes"""
    ctx = build_field(AG211_P, AG211_N, modulus=AG211_MODULUS, generator=AG211_GENERATOR)
    return SlopeLabeling(ctx=ctx, x_exponent=AG211_X_EXPONENT, y_exponents=AG211_Y_EXPONENTS,
                         slopes=AG211_SLOPES)


def net_ag2_11(labeling: Optional[SlopeLabeling] = None, check: bool = True) -> HeffterSpace:
    """
    Build the net on AG(2, m) from a slope labeling (the GF(3^5) labeling by default)

    Raises:
        IdentityViolated for the first slope whose identity fails
    """
    labeling = labeling or ag211_labeling()
    ctx, x, Y, m = labeling.ctx, labeling.x, labeling.Y, labeling.m
    if ctx.order_of(x) != m:
        raise IdentityViolated(0, f"x = g^{labeling.x_exponent} has order {ctx.order_of(x)}, not {m}")
    residues = [ctx.dlog(y) % m for y in Y]
    if len(set(residues)) != m:
        raise IdentityViolated(INF, f"dlogs of Y mod {m} repeat: {residues}")
    if ctx.sum(Y) != 0:
        raise IdentityViolated(INF, f"sum of Y is {format_elem(ctx, ctx.sum(Y))}")
    for s in labeling.slopes:
        if s == INF or int(s) % m == 0:
            continue
        total = ctx.sum(ctx.mul(ctx.pow(x, i), Y[(int(s) * i) % m]) for i in range(m))
        if total != 0:
            raise IdentityViolated(s, f"sum of x^i y_(si) is {format_elem(ctx, total)}")
    return slope_net(ctx, x, Y, labeling.slopes, check=check)
