"""
Tests for field construction, arithmetic, cyclotomic classes and half-sets
"""
import random

import pytest

import catalog
from errors import (
    DivisionByZero, IndexOutOfRange, NotADivisor, NotAHalfSet, NotIrreducible, NotPrime,
    NotPrimitiveElement, NotPrimitivePolynomial, WrongCongruence, ZeroArgument
)
from field_core import (
    CyclicGroup, SquareCoords, build_field, cyclotomic_class, field_arith, field_from_order,
    field_from_spec, format_elem, half_set, roots_of_unity, squares_generator
)


def test_prime_field_defaults(z71):
    assert z71.generator == 7
    assert z71.header() == "field p=71 n=1 q=71 modulus=64,1 generator=7"
    assert build_field(41).generator == 6
    assert field_from_order(151).spec.modulus == (145, 1)


def test_prime_field_arithmetic(z71):
    assert field_arith(z71, 'add', 50, 30) == 9
    assert field_arith(z71, 'sub', 3, 5) == 69
    assert field_arith(z71, 'mul', 49, 49) == 58
    assert field_arith(z71, 'div', 1, 7) == 61
    assert z71.inv(7) == 61
    assert z71.pow(49, 5) == 45
    assert z71.dlog(z71.elem(23)) == 23
    assert z71.order_of(3) == 35


def test_extension_field_modulus_relation(gf243):
    g = gf243.generator
    # z^5 = z^4 + 2 under z^5 + 2z^4 + 1
    assert gf243.pow(g, 5) == gf243.add(gf243.pow(g, 4), 2)
    assert format_elem(gf243, 1) == "10000"
    assert format_elem(gf243, g) == "01000"
    assert format_elem(gf243, gf243.pow(g, 5)) == "20001"


def test_extension_field_is_a_field(gf243):
    for a in (1, 2, 3, 100, 242):
        assert gf243.mul(a, gf243.inv(a)) == 1
        assert gf243.add(a, gf243.neg(a)) == 0
    assert len(set(gf243.exp_table.tolist())) == 242


def test_default_extension_uses_least_primitive_polynomial():
    ctx = build_field(3, 2)
    assert ctx.spec.modulus == (2, 1, 1)
    assert ctx.generator == 3


@pytest.mark.parametrize("kwargs, error", [
    ({'p': 4}, NotPrime),
    ({'p': 3, 'n': 2, 'modulus': (2, 0, 1)}, NotIrreducible),
    ({'p': 3, 'n': 2, 'modulus': (1, 0, 1)}, NotPrimitivePolynomial),
    ({'p': 71, 'generator': 3}, NotPrimitiveElement),
])
def test_bad_field_parameters(kwargs, error):
    with pytest.raises(error):
        build_field(**kwargs)


def test_field_from_spec_round_trip(gf243):
    assert field_from_spec(gf243.spec) == gf243


def test_zero_arguments(z71):
    with pytest.raises(DivisionByZero):
        z71.inv(0)
    with pytest.raises(ZeroDivisionError):
        z71.div(5, 0)
    with pytest.raises(ZeroArgument):
        z71.dlog(0)


def test_cyclotomic_class_errors(z71):
    with pytest.raises(NotADivisor):
        cyclotomic_class(z71, 4, 0)
    with pytest.raises(IndexOutOfRange):
        cyclotomic_class(z71, 5, 5)


@pytest.mark.parametrize("q", [71, 163, 243, 343])
def test_every_proper_coset_sums_to_zero(q):
    ctx = field_from_order(q)
    for e in range(1, q - 1):
        if (q - 1) % e:
            continue
        classes = [cyclotomic_class(ctx, e, i) for i in range(e)]
        assert all(ctx.sum(cls) == 0 for cls in classes)
        assert set().union(*classes) == set(range(1, q))


def test_roots_of_unity(z71):
    roots = roots_of_unity(z71, 5)
    assert roots[0] == 1
    assert len(set(roots)) == 5
    assert all(z71.pow(w, 5) == 1 for w in roots)
    assert z71.sum(roots) == 0
    with pytest.raises(NotADivisor):
        roots_of_unity(z71, 4)


def test_squares_form_a_half_set(z71):
    V = half_set(z71)
    assert len(V) == 35
    assert all(z71.neg(x) not in V for x in V)


def test_squares_need_q_3_mod_4(z41):
    with pytest.raises(WrongCongruence):
        half_set(z41)


def test_explicit_half_set(z41):
    assert half_set(z41, catalog.Z41_HALFSET) == frozenset(catalog.Z41_HALFSET)
    with pytest.raises(NotAHalfSet) as info:
        half_set(z41, (1, 40) + catalog.Z41_HALFSET[1:])
    assert set(info.value.pair) == {1, 40}


def test_half_set_in_cyclic_group():
    Z9 = CyclicGroup(9)
    assert half_set(Z9, (1, 2, 3, 4)) == frozenset({1, 2, 3, 4})
    with pytest.raises(NotAHalfSet):
        half_set(Z9, (1, 2, 3))


def test_square_coordinates(z71):
    coords = SquareCoords(z71, catalog.F71_RHO)
    assert coords.phi(1) == 0
    assert coords.phi(49) == 1
    assert coords.power(5) == 45
    assert sorted(coords.phi(b) % 5 for b in catalog.F71_RULER) == [0, 1, 2, 3, 4]
    # 3 has order 35, so it generates the squares
    assert SquareCoords(z71, 3).phi(3) == 1
    with pytest.raises(NotPrimitiveElement):
        SquareCoords(z71, 1)
    with pytest.raises(NotPrimitiveElement):
        SquareCoords(z71, 7)
    assert squares_generator(z71).rho == catalog.F71_RHO == 7 * 7


@pytest.mark.parametrize("q", [41, 71, 243, 343, 1459])
def test_dlog_turns_products_into_sums(q):
    ctx = field_from_order(q)
    rng = random.Random(q)
    for _ in range(200):
        x, y = rng.randrange(1, q), rng.randrange(1, q)
        assert ctx.dlog(ctx.mul(x, y)) == (ctx.dlog(x) + ctx.dlog(y)) % (q - 1)
        assert ctx.elem(ctx.dlog(x)) == x


@pytest.mark.parametrize("q", [71, 243, 343])
def test_galois_field_shares_the_codes(q):
    ctx = field_from_order(q)
    GF = ctx.galois_field()
    rng = random.Random(q)
    for _ in range(100):
        a, b = rng.randrange(q), rng.randrange(q)
        assert int(GF(a) * GF(b)) == ctx.mul(a, b)
        assert int(GF(a) + GF(b)) == ctx.add(a, b)
    assert int(GF(ctx.generator) ** 5) == ctx.elem(5)
