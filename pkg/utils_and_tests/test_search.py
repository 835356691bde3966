"""
Tests for ruler verification and search, difference packings, the Weil bracket and net seeds
"""
from fractions import Fraction
from itertools import combinations

import pytest

import catalog
from construct import verify_net_seed
from errors import ElementNotSquare, NoDivisibility, WrongCongruence
from field_core import field_from_order
from search import (
    admissible_ruler_orders, canonical_form, enumerate_inequivalent_rulers, inequivalent_table,
    min_guaranteed_prime_power, ruler_table_row, rulers_equivalent, search_net_seed, search_packing,
    search_rulers, verify_packing, verify_ruler, weil_threshold
)
from utils import truncate_decimal


def _primitive_roots(p):
    return [g for g in range(2, p) if len({pow(g, e, p) for e in range(p - 1)}) == p - 1]


def test_f71_ruler(z71):
    report = verify_ruler(z71, 5, catalog.F71_RULER)
    assert report.valid
    assert report.params['simple'] == "yes"
    assert verify_ruler(z71, 5, catalog.F71_BASE_BLOCK, rho=catalog.F71_RHO).valid


def test_ruler_verdict_independent_of_generator():
    for g in _primitive_roots(71):
        ctx = field_from_order(71, generator=g)
        assert verify_ruler(ctx, 5, catalog.F71_RULER).valid


def test_ruler_violations_are_located(z71):
    report = verify_ruler(z71, 5, (1, 25, 49, 43, 4))
    assert not report.valid
    assert any(v.startswith("H3") for v in report.violations)
    with pytest.raises(ElementNotSquare):
        verify_ruler(z71, 5, (1, 7, 49, 43, 24))
    with pytest.raises(NoDivisibility):
        verify_ruler(z71, 3, (1, 25, 49))
    with pytest.raises(WrongCongruence):
        verify_ruler(field_from_order(41), 5, (1, 2, 3, 4, 5))


@pytest.mark.parametrize("row", catalog.RULER_TABLE, ids=lambda r: f"k{r['k']}")
def test_ruler_table(row):
    ctx = field_from_order(row['q'])
    assert verify_ruler(ctx, row['k'], row['ruler']).valid
    densities = ruler_table_row(ctx, row['ruler'])
    for key in ('density', 'extended'):
        shown = truncate_decimal(densities[key])
        if (row['k'], key) in catalog.RULER_TABLE_MISPRINTS:
            assert shown != Fraction(row[key])
        else:
            assert shown == Fraction(row[key])


def test_ruler_table_exact_values():
    assert ruler_table_row(field_from_order(71), catalog.F71_RULER) == {
        'density': Fraction(10, 17), 'extended': Fraction(13, 17)}
    assert ruler_table_row(field_from_order(599), catalog.RULER_TABLE[-1]['ruler'])['density'] == Fraction(156, 298)


@pytest.mark.parametrize("q", [19, 31, 43])
def test_no_3_ruler_below_67(q):
    assert search_rulers(field_from_order(q), 3, "first") == []


def test_least_orders():
    count, reps = enumerate_inequivalent_rulers(field_from_order(67), 3)
    assert count == 1
    assert verify_ruler(field_from_order(67), 3, reps[0].elements).valid
    assert admissible_ruler_orders(5, 71) == [11, 31]
    for q in admissible_ruler_orders(5, 71):
        assert search_rulers(field_from_order(q), 5, "first") == []
    assert search_rulers(field_from_order(71), 5, "first")


def test_inequivalent_k3_table():
    counts = dict(inequivalent_table(3, 500))
    assert {q: counts[q] for q in catalog.INEQUIVALENT_K3} == catalog.INEQUIVALENT_K3
    assert 343 in counts


def test_orbits_and_equivalence(z71):
    rulers = search_rulers(z71, 5, "all")
    count, reps = enumerate_inequivalent_rulers(z71, 5)
    assert len(rulers) == 5 * count
    t = 49
    scaled = [z71.mul(b, t) for b in catalog.F71_RULER]
    assert rulers_equivalent(z71, catalog.F71_RULER, scaled)
    assert canonical_form(z71, scaled) in {canonical_form(z71, r.elements) for r in reps}


def test_thread_count_does_not_change_output(z71):
    assert search_rulers(z71, 5, "all", threads=1) == search_rulers(z71, 5, "all", threads=2)


def test_f151_facts():
    ctx = field_from_order(catalog.F151_Q)
    count, _ = enumerate_inequivalent_rulers(ctx, catalog.F151_K)
    assert count == catalog.F151_INEQUIVALENT
    assert verify_packing(ctx, catalog.F151_PACKING).valid
    packing = search_packing(ctx, 5, 2, "exhaustive")
    assert packing is not None and len(packing.rulers) == 2


@pytest.mark.slow
def test_f151_has_no_3_packing():
    assert search_packing(field_from_order(catalog.F151_Q), 5, 3, "exhaustive") is None


def test_packing_overlap_reported(z71):
    report = verify_packing(z71, [catalog.F71_RULER, catalog.F71_BASE_BLOCK])
    assert not report.valid
    assert any("share phi-differences" in v for v in report.violations)


@pytest.mark.parametrize("k", [3, 5, 7, 9, 11, 13])
@pytest.mark.parametrize("n", range(1, 11))
def test_weil_bracket_below_simple_bound(k, n):
    bound = weil_threshold(k, n)
    assert bound.q_low <= bound.q_high < bound.simple_bound == 8 * k ** 5 * n


def test_min_guaranteed_prime_power():
    assert min_guaranteed_prime_power(5, 1) == 25031


@pytest.mark.slow
def test_greedy_packing_above_bound():
    ctx = field_from_order(min_guaranteed_prime_power(5, 1))
    packing = search_packing(ctx, 5, 1, "greedy")
    assert packing is not None
    assert verify_ruler(ctx, 5, packing.rulers[0].elements).valid


def test_greedy_is_reproducible():
    ctx = field_from_order(min_guaranteed_prime_power(3, 1))
    first = search_packing(ctx, 3, 1, "greedy", seed=7)
    second = search_packing(ctx, 3, 1, "greedy", seed=7)
    assert first is not None
    assert first == second


@pytest.mark.slow
def test_net_seed_search_163():
    ctx = field_from_order(163)
    seed = search_net_seed(ctx, "backtrack")
    assert seed is not None
    assert verify_net_seed(ctx, seed.x, seed.Y).n == 3
    # the search only visits seeds with y_i in the i-th coset
    assert [ctx.dlog(y) % 9 for y in seed.Y] == list(range(9))


def test_randomized_net_seed_search_is_seeded():
    ctx = field_from_order(163)
    with pytest.raises(ValueError):
        search_net_seed(ctx, "randomized", None, 10)
    assert search_net_seed(ctx, "randomized", 5, 200) == search_net_seed(ctx, "randomized", 5, 200)


def test_first_ruler_skips_candidates_without_simple_ordering(z71, monkeypatch):
    import search
    every = search_rulers(z71, 5, "all")
    assert len(every) >= 2
    real = search._as_simple_ruler
    rejected = []

    def reject_first(ctx, coords, found):
        if not rejected:
            rejected.append(found)
        if found == rejected[0]:
            return None
        return real(ctx, coords, found)

    monkeypatch.setattr(search, "_as_simple_ruler", reject_first)
    first = search_rulers(z71, 5, "first")
    assert len(first) == 1
    assert set(first[0].elements) != set(rejected[0])
    assert first[0] in every


def test_net_seed_solver_inverts_the_tail_system():
    from search import _SeedSolver
    generator, x, _ = catalog.net_seed_data(163)
    ctx = field_from_order(163, generator=generator)
    solver = _SeedSolver(ctx, x, 9)
    M = [[1, 1, 1], [solver.xp[a] for a in solver.tail], [solver.xm[a] for a in solver.tail]]
    for i in range(3):
        for j in range(3):
            entry = ctx.sum(ctx.mul(solver.inverse[i][t], M[t][j]) for t in range(3))
            assert entry == (1 if i == j else 0)


def test_k3_inequivalence_is_difference_disjointness():
    for q in admissible_ruler_orders(3, 500):
        ctx = field_from_order(q)
        rulers = search_rulers(ctx, 3, "all")
        for A, B in combinations(rulers, 2):
            shared = bool(A.differences & B.differences)
            assert rulers_equivalent(ctx, A.elements, B.elements) == shared, (q, A.elements, B.elements)


@pytest.mark.parametrize("k", [3, 5])
def test_every_ruler_found_verifies(k):
    for q in admissible_ruler_orders(k, 501):
        ctx = field_from_order(q)
        rulers = search_rulers(ctx, k, "all")
        for ruler in rulers:
            report = verify_ruler(ctx, k, ruler.elements)
            assert report.valid, (q, ruler.elements, report.violations)
            assert report.params['simple'] == "yes"
        assert search_rulers(ctx, k, "first") == rulers[:1]


@pytest.mark.slow
def test_every_k7_ruler_found_verifies():
    for q in admissible_ruler_orders(7, 501):
        ctx = field_from_order(q)
        for ruler in search_rulers(ctx, 7, "all"):
            assert verify_ruler(ctx, 7, ruler.elements).valid, (q, ruler.elements)
