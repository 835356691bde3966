"""
Tests for partial-sum cycles, cycle system orthogonality and super-orthogonal Steiner triple systems
"""
import random
from itertools import combinations

import numpy as np
import pytest

import catalog
from cycles import (
    Cycle, base_cycles, base_systems_orthogonal, cycle_systems_orthogonal, develop_cycle_system,
    enumerate_sts9, materialize_cycles, mu_lower_bounds, near_one_factorization, partial_sum_cycle,
    random_sts, search_super_orthogonal, space_cycle_systems, sts9_super_orthogonal_pairs,
    sts_super_orthogonal, verify_base_cycles, verify_sts, weil_mohs_lower_bound
)
from designs import HeffterSystem
from errors import NotAnSTS, NotSimple, NotZeroSum, VertexSetMismatch
from field_core import CyclicGroup

FANO = ((0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2))


@pytest.fixture(scope="module")
def f71_cycle_systems(z71, f71_space):
    return space_cycle_systems(z71, f71_space)


def test_partial_sum_cycle(z71):
    assert partial_sum_cycle(z71, catalog.F71_BASE_BLOCK) == Cycle((1, 25, 50, 22, 0))
    with pytest.raises(NotZeroSum):
        partial_sum_cycle(z71, (1, 2, 3))


def test_non_simple_block_is_located():
    Z13 = CyclicGroup(13)
    with pytest.raises(NotSimple) as info:
        partial_sum_cycle(Z13, (1, 12, 2, 11))
    assert info.value.block == (1, 12, 2, 11)


def test_cycle_equality_ignores_rotation_and_reflection():
    assert Cycle((1, 2, 3, 4)) == Cycle((3, 4, 1, 2)) == Cycle((4, 3, 2, 1))
    assert Cycle((1, 2, 3, 4)) != Cycle((1, 3, 2, 4))


def test_base_cycles_match_printed_tables(f71_cycle_systems):
    for system in f71_cycle_systems[:3]:
        assert set(system.base) == {Cycle(c) for c in catalog.F71_CYCLES[system.name]}


def test_base_cycles_cover_every_difference(z71, f71_cycle_systems):
    assert len(f71_cycle_systems) == 5
    for system in f71_cycle_systems:
        report = verify_base_cycles(z71, system.base)
        assert report.valid, report.violations
        assert report.params == {'uncovered': "0", 'repeated': "0"}


def test_broken_base_cycles(z71, f71_cycle_systems):
    report = verify_base_cycles(z71, f71_cycle_systems[0].base[:-1])
    assert not report.valid
    assert report.params['uncovered'] == "10"


def test_developed_systems_decompose_k71(z71, f71_cycle_systems):
    for system in f71_cycle_systems:
        developed = develop_cycle_system(z71, system)
        assert len(developed.cycles) == 71 * 7
        edges = {e for c in developed.cycles for e in c.edges()}
        assert len(edges) == 2485 == 71 * 70 // 2
        keys = np.array([a * 71 + b for a, b in edges])
        assert len(np.unique(keys)) == 2485


def test_five_mutually_orthogonal_pentagon_systems(f71_cycle_systems):
    for A, B in combinations(f71_cycle_systems, 2):
        assert cycle_systems_orthogonal(A, B) == (True, None)
        assert base_systems_orthogonal(A, B) == (True, None)


def test_orthogonality_needs_one_group(z71, f71_cycle_systems):
    Z9 = CyclicGroup(9)
    other = base_cycles(Z9, HeffterSystem(halfset=frozenset({1, 2, 3, 4}), blocks=((1, 2, 6),), name="Z9"))
    with pytest.raises(VertexSetMismatch):
        cycle_systems_orthogonal(f71_cycle_systems[0], other)


def test_self_orthogonality_fails(f71_cycle_systems):
    ok, witness = cycle_systems_orthogonal(f71_cycle_systems[0], f71_cycle_systems[0])
    assert not ok
    assert witness[0] == witness[1]


def test_materialize(tmp_path, f71_cycle_systems):
    path = tmp_path / "p1.txt"
    assert materialize_cycles(f71_cycle_systems[0], str(path)) == 497
    lines = path.read_text().splitlines()
    assert len(lines) == 497
    assert all(len(line.split()) == 5 for line in lines)


def test_mu_lower_bounds(z71, f71_space, f71_extended):
    assert mu_lower_bounds([(z71, f71_space)]) == {(5, 71): 5}
    assert mu_lower_bounds([(z71, f71_space), (z71, f71_extended)])[(5, 71)] == 5
    assert weil_mohs_lower_bound(5, 25031) == 11


def test_fano_plane():
    sts = verify_sts(range(7), FANO)
    assert len(sts) == 7
    N = near_one_factorization(sts)
    assert all(len(pairs) == 3 for pairs in N.values())
    with pytest.raises(NotAnSTS):
        verify_sts(range(7), FANO[:-1])
    with pytest.raises(NotAnSTS):
        verify_sts(range(7), FANO + ((0, 1, 2),))


def test_sts9_count():
    systems = enumerate_sts9()
    assert len(systems) == catalog.STS9_COUNT
    assert all(len(s) == 12 for s in systems)


def test_random_sts_orders():
    rng = random.Random(3)
    for v in catalog.STS_ORDERS:
        assert len(random_sts(v, rng)) == v * (v - 1) // 6
    with pytest.raises(NotAnSTS):
        random_sts(11, rng)


def _compare_disjoint_pairs(v, wanted, rng, max_draws):
    # sts_super_orthogonal raises AssertionError when the two conditions disagree
    compared = 0
    for _ in range(max_draws):
        S, S2 = random_sts(v, rng), random_sts(v, rng)
        if S & S2:
            continue
        sts_super_orthogonal(range(v), S, S2)
        compared += 1
        if compared == wanted:
            break
    return compared


@pytest.mark.parametrize("v", [7, 9, 13])
def test_super_orthogonality_formulations_agree(v):
    assert _compare_disjoint_pairs(v, 25, random.Random(v), 2000) == 25


@pytest.mark.slow
@pytest.mark.parametrize("v", [7, 9, 13])
def test_super_orthogonality_formulations_agree_many(v):
    assert _compare_disjoint_pairs(v, 1000, random.Random(1000 + v), 100_000) == 1000


def test_no_super_orthogonal_sts9_pair():
    checked, found = sts9_super_orthogonal_pairs()
    assert checked > 0
    assert found == 0


@pytest.mark.slow
def test_no_super_orthogonal_sts9_pair_full(tmp_path):
    from checkpoint import CheckpointManager
    checkpoint = CheckpointManager(str(tmp_path / "sts9.json"), job="sts9 full")
    checked, found = sts9_super_orthogonal_pairs(full=True, checkpoint=checkpoint)
    assert found == 0
    assert checkpoint.is_complete()


@pytest.mark.slow
def test_super_orthogonal_pair_at_19():
    pair = search_super_orthogonal(19, seed=1)
    assert pair is not None
    S, S2 = pair
    assert sts_super_orthogonal(range(19), S, S2) == (True, None)


def test_super_orthogonal_search_needs_a_seed():
    with pytest.raises(ValueError):
        search_super_orthogonal(7)
