"""
Finite field core: exact GF(p^n) arithmetic on integer codes, discrete-log tables,
cyclotomic classes, roots of unity and half-sets.

Element codes follow the usual integer representation: the coefficient vector
(c0, ..., c_{n-1}) in the basis {1, z, ..., z^{n-1}} is stored as sum(c_i * p^i).
For prime fields the code is the residue itself.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from errors import (
    DivisionByZero, IndexOutOfRange, NotADivisor, NotAHalfSet, NotIrreducible,
    NotPrime, NotPrimitiveElement, NotPrimitivePolynomial, WrongCongruence,
    ZeroArgument, ElementNotSquare
)
from utils import prime_power_parts


@dataclass(frozen=True)
class FieldSpec:
    """Identity of a field: characteristic, degree, modulus (constant term first) and generator"""
    p: int
    n: int
    q: int
    modulus: Tuple[int, ...]
    generator: int

    def header(self) -> str:
        modulus = ",".join(str(c) for c in self.modulus)
        return f"field p={self.p} n={self.n} q={self.q} modulus={modulus} generator={self.generator}"


class CyclicGroup:
    """The additive group Z_m, for designs that do not live in a field"""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError(f"group order must be positive, got {order}")
        self.order = order
        self.zero = 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def neg(self, a: int) -> int:
        return (-a) % self.order

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.order

    def sum(self, elems: Iterable[int]) -> int:
        return sum(elems) % self.order

    def contains(self, x: int) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.order

    def elements(self) -> range:
        return range(self.order)

    def describe(self) -> str:
        return f"Z_{self.order}"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("Z", self.order))


class FieldCtx:
    """
    An immutable finite field with exp/log tables for a fixed primitive element

    The context doubles as its own additive group (add/neg/sum/elements), so
    design verifiers accept either a FieldCtx or a CyclicGroup.
    """

    def __init__(self, spec: FieldSpec, exp: np.ndarray, log: np.ndarray):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.q
        self.order = spec.q
        self.zero = 0
        self.one = 1
        self.generator = spec.generator
        self.exp_table = exp
        self.log_table = log
        self.exp_table.setflags(write=False)
        self.log_table.setflags(write=False)
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._weights = [self.p ** i for i in range(self.n)]
        if self.n > 1:
            self._digits = [tuple((c // w) % self.p for w in self._weights) for c in range(self.q)]
        else:
            self._digits = None

    # -- additive group -------------------------------------------------

    def _encode(self, digits: Iterable[int]) -> int:
        return sum(d * w for d, w in zip(digits, self._weights))

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        return self._encode((x + y) % p for x, y in zip(self._digits[a], self._digits[b]))

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        return self._encode((-x) % p for x in self._digits[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def sum(self, elems: Iterable[int]) -> int:
        if self.n == 1:
            return sum(elems) % self.p
        total = [0] * self.n
        for e in elems:
            for i, d in enumerate(self._digits[e]):
                total[i] += d
        return self._encode(t % self.p for t in total)

    def contains(self, x: int) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.q

    def elements(self) -> range:
        return range(self.q)

    def describe(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"Z_{self.p}"

    # -- multiplicative structure ---------------------------------------

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        if a == 0:
            if m < 0:
                raise DivisionByZero("negative power of 0")
            return 1 if m == 0 else 0
        return self._exp[(self._log[a] * m) % (self.q - 1)]

    def elem(self, m: int) -> int:
        """g^m"""
        return self._exp[m % (self.q - 1)]

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ZeroArgument("discrete log of 0 is undefined")
        if not self.contains(x):
            raise ValueError(f"{x} is not an element code of {self.describe()}")
        return self._log[x]

    def is_square(self, x: int) -> bool:
        return x != 0 and self._log[x] % 2 == 0

    def order_of(self, x: int) -> int:
        """Multiplicative order of a nonzero element"""
        e = self.dlog(x)
        return (self.q - 1) // gcd(e, self.q - 1)

    def galois_field(self):
        """The galois FieldArray class of this field; its integers are the element codes"""
        return _galois_field(self.p, self.n, self.spec.modulus)

    # -- display --------------------------------------------------------

    def digits_of(self, code: int) -> Tuple[int, ...]:
        if self.n == 1:
            return (code,)
        return self._digits[code]

    def header(self) -> str:
        return self.spec.header()

    def __repr__(self) -> str:
        return f"FieldCtx({self.describe()}, generator={self.generator})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)


Group = Union[FieldCtx, CyclicGroup]


def format_elem(ctx: FieldCtx, code: int) -> str:
    """Coefficient-vector display, constant term first (e.g. '12200' in GF(3^5))"""
    return "".join(str(d) for d in ctx.digits_of(code)) if ctx.n > 1 else str(code)


def _is_primitive_root(g: int, p: int) -> bool:
    if p == 2:
        return g == 1
    if g % p == 0:
        return False
    primes, _ = galois.factors(p - 1)
    return all(pow(g, (p - 1) // int(ell), p) != 1 for ell in primes)


def _least_primitive_root(p: int) -> int:
    for g in range(1, p):
        if _is_primitive_root(g, p):
            return g
    raise NotPrimitiveElement(f"no primitive root modulo {p}")


def _poly(coeffs_constant_first: Sequence[int], p: int) -> galois.Poly:
    return galois.Poly(list(reversed(coeffs_constant_first)), field=galois.GF(p))


@lru_cache(maxsize=32)
def _galois_field(p: int, n: int, modulus: Tuple[int, ...]):
    if n == 1:
        return galois.GF(p)
    return galois.GF(p ** n, irreducible_poly=_poly(modulus, p))


def _least_primitive_polynomial(p: int, n: int) -> Tuple[int, ...]:
    # itertools.product varies the last position fastest, so the constant term is most significant
    for lower in itertools.product(range(p), repeat=n):
        if lower[0] == 0:
            continue
        coeffs = tuple(lower) + (1,)
        if _poly(coeffs, p).is_primitive():
            return coeffs
    raise NotPrimitivePolynomial(f"no primitive polynomial of degree {n} over GF({p})")


def _check_modulus(p: int, n: int, modulus: Sequence[int]) -> Tuple[int, ...]:
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != n + 1:
        raise NotIrreducible(f"modulus must have degree {n}, got coefficients {modulus}")
    if modulus[-1] != 1:
        raise NotIrreducible(f"modulus must be monic, got leading coefficient {modulus[-1]}")
    if any(not 0 <= c < p for c in modulus):
        raise NotIrreducible(f"modulus coefficients must lie in [0, {p})")
    return modulus


@lru_cache(maxsize=32)
def _build_field_cached(p: int, n: int, modulus: Optional[Tuple[int, ...]],
                        generator: Optional[int]) -> FieldCtx:
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be at least 1, got {n}")
    q = p ** n

    if n == 1:
        if modulus is not None:
            modulus = _check_modulus(p, 1, modulus)
            root = (-modulus[0]) % p
            if not _is_primitive_root(root, p):
                raise NotPrimitivePolynomial(f"root {root} of modulus {modulus} is not primitive mod {p}")
            if generator is not None and generator % p != root:
                raise NotPrimitiveElement(
                    f"generator {generator} must be the root {root} of the linear modulus"
                )
            generator = root
        else:
            if generator is None:
                generator = _least_primitive_root(p)
            elif not _is_primitive_root(generator, p):
                raise NotPrimitiveElement(f"{generator} is not a primitive root mod {p}")
            modulus = ((p - generator) % p, 1)
        exp = np.empty(q - 1, dtype=np.int64)
        cur = 1
        for m in range(q - 1):
            exp[m] = cur
            cur = (cur * generator) % p
    else:
        if modulus is not None:
            modulus = _check_modulus(p, n, modulus)
            poly = _poly(modulus, p)
            if not poly.is_irreducible():
                raise NotIrreducible(f"{poly} is reducible over GF({p})")
            if not poly.is_primitive():
                raise NotPrimitivePolynomial(f"{poly} is irreducible but not primitive over GF({p})")
        else:
            modulus = _least_primitive_polynomial(p, n)
        if generator is None:
            generator = p  # the class of z, primitive because the modulus is
        if not 0 < generator < q:
            raise NotPrimitiveElement(f"generator code {generator} out of range for q={q}")
        GF = _galois_field(p, n, tuple(modulus))
        g = GF(generator)
        exp = np.empty(q - 1, dtype=np.int64)
        cur = GF(1)
        for m in range(q - 1):
            exp[m] = int(cur)
            cur = cur * g
        if len(np.unique(exp)) != q - 1:
            raise NotPrimitiveElement(f"element {generator} does not generate GF({p}^{n})*")

    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1, dtype=np.int64)
    spec = FieldSpec(p=p, n=n, q=q, modulus=tuple(modulus), generator=int(generator))
    logging.debug(f"✓ Built {spec.header()}")
    return FieldCtx(spec, exp, log)


def build_field(p: int, n: int = 1, modulus: Optional[Sequence[int]] = None,
                generator: Optional[int] = None) -> FieldCtx:
    """
    Build (or fetch from cache) the field GF(p^n)

    Args:
        p: Prime characteristic
        n: Extension degree
        modulus: Monic modulus, constant term first; the least primitive polynomial if omitted
        generator: Primitive element code; the least primitive element if omitted

    Returns:
        FieldCtx with verified modulus and generator
    """
    key = tuple(int(c) for c in modulus) if modulus is not None else None
    return _build_field_cached(int(p), int(n), key, None if generator is None else int(generator))


def field_from_order(q: int, generator: Optional[int] = None) -> FieldCtx:
    """Canonical field of order q (a prime power)"""
    parts = prime_power_parts(q)
    if parts is None:
        raise NotPrime(f"{q} is not a prime power")
    p, n = parts
    return build_field(p, n, generator=generator)


def field_from_spec(spec: FieldSpec) -> FieldCtx:
    """Rebuild a field from a certificate header and confirm it matches"""
    if spec.q != spec.p ** spec.n:
        raise NotPrime(f"q={spec.q} is not {spec.p}^{spec.n}")
    return build_field(spec.p, spec.n, modulus=spec.modulus, generator=spec.generator)


def field_arith(ctx: FieldCtx, op: str, *operands: int) -> int:
    """Dispatch one of add, sub, mul, div, neg, inv, pow"""
    ops = {
        'add': ctx.add, 'sub': ctx.sub, 'mul': ctx.mul, 'div': ctx.div,
        'neg': ctx.neg, 'inv': ctx.inv, 'pow': ctx.pow,
    }
    if op not in ops:
        raise ValueError(f"unknown field operation {op!r}")
    return ops[op](*operands)


def cyclotomic_class(ctx: FieldCtx, e: int, i: int, ordered: bool = False):
    """
    The cyclotomic class C^e_i = {g^(i+ej) : 0 <= j < (q-1)/e}

    Args:
        ctx: Field
        e: Index, a divisor of q-1
        i: Class index in [0, e)
        ordered: Return a tuple in j order instead of a frozenset

    Returns:
        frozenset (or tuple) of element codes
    """
    if e <= 0 or (ctx.q - 1) % e != 0:
        raise NotADivisor(f"{e} does not divide q-1 = {ctx.q - 1}")
    if not 0 <= i < e:
        raise IndexOutOfRange(f"class index {i} outside [0, {e})")
    members = tuple(ctx.elem(i + e * j) for j in range((ctx.q - 1) // e))
    return members if ordered else frozenset(members)


def roots_of_unity(ctx: FieldCtx, m: int) -> Tuple[int, ...]:
    """The m-th roots of unity as (w^0, w^1, ...) with w = g^((q-1)/m)"""
    if m <= 0 or (ctx.q - 1) % m != 0:
        raise NotADivisor(f"{m} does not divide q-1 = {ctx.q - 1}")
    step = (ctx.q - 1) // m
    return tuple(ctx.elem(step * j) for j in range(m))


def half_set(group: Group, V: Optional[Iterable[int]] = None) -> FrozenSet[int]:
    """
    Return the nonzero squares of a field with q = 3 (mod 4), or validate an explicit half-set

    Args:
        group: FieldCtx or CyclicGroup of odd order at least 7
        V: Explicit candidate; squares of the field when omitted

    Returns:
        The validated half-set
    """
    if group.order % 2 == 0 or group.order < 7:
        raise NotAHalfSet(f"group order {group.order} must be odd and at least 7")

    if V is None:
        if not isinstance(group, FieldCtx):
            raise NotAHalfSet("squares are only defined for a field context")
        if group.q % 4 != 3:
            raise WrongCongruence(f"q = {group.q} is 1 mod 4, so -1 is a square and the squares are not a half-set")
        return frozenset(group.elem(2 * m) for m in range((group.q - 1) // 2))

    members = set(V)
    for x in sorted(members):
        if x == 0 or not group.contains(x):
            raise NotAHalfSet(f"{x} is not a nonzero element of {group.describe()}", (x,))
        if group.neg(x) in members:
            raise NotAHalfSet(f"both {x} and -{x} = {group.neg(x)} lie in V", (x, group.neg(x)))
    if 2 * len(members) != group.order - 1:
        for x in group.elements():
            if x != 0 and x not in members and group.neg(x) not in members:
                raise NotAHalfSet(f"neither {x} nor {group.neg(x)} lies in V", (x, group.neg(x)))
    return frozenset(members)


class SquareCoords:
    """
    The isomorphism phi from the squares onto Z_v, phi(rho^m) = m

    rho defaults to g^2; any generator of the squares may be supplied.
    """

    def __init__(self, ctx: FieldCtx, rho: Optional[int] = None):
        if ctx.q % 2 == 0:
            raise WrongCongruence("square coordinates need odd q")
        self.ctx = ctx
        self.v = (ctx.q - 1) // 2
        if rho is None:
            rho = ctx.elem(2)
        if rho == 0 or not ctx.contains(rho) or not ctx.is_square(rho):
            raise NotPrimitiveElement(f"{rho} is not a square, so it cannot generate the squares")
        self._a = ctx.dlog(rho) // 2
        if gcd(self._a, self.v) != 1:
            raise NotPrimitiveElement(f"{rho} has order less than {self.v}, so it does not generate the squares")
        self.rho = rho
        self._a_inv = pow(self._a, -1, self.v) if self.v > 1 else 0

    def phi(self, b: int) -> int:
        if b == 0 or not self.ctx.is_square(b):
            raise ElementNotSquare(f"{b} is not a nonzero square of {self.ctx.describe()}")
        return ((self.ctx.dlog(b) // 2) * self._a_inv) % self.v

    def power(self, m: int) -> int:
        """rho^m"""
        return self.ctx.elem(2 * ((self._a * m) % self.v))


def squares_generator(ctx: FieldCtx, rho: Optional[int] = None) -> SquareCoords:
    """Coordinates phi on the nonzero squares, generated by rho (g^2 when omitted)"""
    return SquareCoords(ctx, rho)
