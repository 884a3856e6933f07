from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import E2, E3, I1, I3, code, fam, frozen, frozen_family
from hmat.errors import EmptyFamily, NotAMember
from hmat.family import (
    GroundSet,
    SetFamily,
    bases,
    co_extreme_points,
    downward_closure,
    extreme_points,
    is_constructible,
    is_simplicial,
    maximal_members,
    restriction,
)


def test_ground_set_limits():
    with pytest.raises(ValueError):
        GroundSet(())
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))
    with pytest.raises(ValueError):
        GroundSet.of_size(25)
    assert GroundSet.of_size(24).num_subsets == 1 << 24


def test_hmat_max_n_lowers_the_cap(monkeypatch):
    monkeypatch.setenv("HMAT_MAX_N", "2")
    with pytest.raises(ValueError):
        GroundSet.of_size(3)
    monkeypatch.setenv("HMAT_MAX_N", "40")
    with pytest.raises(ValueError):
        GroundSet.of_size(25)


def test_family_is_canonical():
    f = SetFamily.of(E3, [6, 0, 3, 2, 3])
    assert f.members == (0, 2, 3, 6)
    assert f == fam(E3, I1)
    with pytest.raises(ValueError):
        SetFamily(E3, (3, 2))
    with pytest.raises(ValueError):
        SetFamily(E3, (8,))


def test_extreme_points_examples():
    i1 = fam(E3, I1)
    assert extreme_points(i1, code(E3, [1, 2])) == code(E3, [1])
    assert extreme_points(i1, 0) == 0
    full = SetFamily.power_set(E2)
    assert extreme_points(full, E2.full) == E2.full
    with pytest.raises(NotAMember):
        extreme_points(i1, code(E3, [1]))


def test_co_extreme_points_examples():
    i1 = fam(E3, I1)
    assert co_extreme_points(i1, code(E3, [2])) == code(E3, [1, 3])
    assert co_extreme_points(i1, code(E3, [1, 2])) == 0
    assert co_extreme_points(SetFamily(E3, (0,)), 0) == 0
    with pytest.raises(NotAMember):
        co_extreme_points(i1, E3.full)


def test_maximal_members_examples():
    assert maximal_members(fam(E3, I1)) == fam(E3, [[1, 2], [2, 3]])
    assert maximal_members(SetFamily(E3, (0,))) == SetFamily(E3, (0,))
    assert maximal_members(fam(E3, I3)) == fam(E3, [[1, 2], [2, 3]])
    with pytest.raises(EmptyFamily):
        maximal_members(SetFamily(E3, ()))


def test_bases_examples():
    i2 = fam(E3, [[], [1], [3], [1, 2], [2, 3]])
    assert bases(i2) == fam(E3, [[1, 2], [2, 3]])
    assert bases(SetFamily(E3, (0,))) == SetFamily(E3, (0,))
    assert bases(fam(E3, [[], [1], [2], [2, 3]])) == fam(E3, [[1], [2, 3]])
    with pytest.raises(EmptyFamily):
        bases(SetFamily(E3, ()))


def test_is_constructible_examples():
    assert is_constructible(fam(E3, I1))
    check = is_constructible(fam(E2, [[], [1, 2]]))
    assert not check and check.witness == {"I": E2.full}
    assert is_constructible(SetFamily(E3, (0,)))
    empty = is_constructible(SetFamily(E3, ()))
    assert not empty and empty.witness == {"tag": "EmptyFamily"}


def test_restriction_examples():
    i1 = fam(E3, I1)
    assert restriction(i1, code(E3, [1, 2])) == fam(E3, [[], [2], [1, 2]])
    assert restriction(i1, E3.full) == i1
    assert restriction(i1, 0) == SetFamily(E3, (0,))


def test_is_simplicial_examples():
    assert is_simplicial(fam(E3, I3))
    check = is_simplicial(fam(E3, I1))
    assert not check
    # removing element 2 (index 1) leaves {1}, which is missing
    assert check.witness == {"I": code(E3, [1, 2]), "e": 1}
    assert is_simplicial(SetFamily(E3, (0,)))


def test_downward_closure_examples():
    assert downward_closure(fam(E3, I1)) == fam(E3, I3)
    assert downward_closure(fam(E3, I3)) == fam(E3, I3)
    assert downward_closure(fam(E2, [[], [1, 2]])) == SetFamily.power_set(E2)


families4 = st.integers(1, (1 << 16) - 1).map(lambda m: SetFamily.from_mask(GroundSet.of_size(4), m))


@settings(max_examples=300)
@given(families4)
def test_operators_match_definitions(family):
    ground = frozenset(range(1, 5))
    ref = frozen_family(family)
    for i in family:
        fi = frozen(i)
        assert frozen(extreme_points(family, i)) == oracles.ex(ref, fi)
        assert frozen(co_extreme_points(family, i)) == oracles.ex_star(ref, fi, ground)
        assert extreme_points(family, i) & ~i == 0
        assert co_extreme_points(family, i) & i == 0
    assert frozen_family(maximal_members(family)) == oracles.maximal(ref)
    assert frozen_family(bases(family)) == oracles.bases(ref, ground)
    assert bool(is_constructible(family)) == oracles.constructible(ref)
    assert bool(is_simplicial(family)) == oracles.simplicial(ref)
    assert frozen_family(downward_closure(family)) == oracles.closure(ref)


@settings(max_examples=300)
@given(families4)
def test_closure_invariants(family):
    closure = downward_closure(family)
    assert set(bases(family).members) >= set(maximal_members(family).members)
    assert is_simplicial(closure)
    assert is_constructible(closure)
    assert downward_closure(closure) == closure
    assert maximal_members(closure) == maximal_members(family)
    assert bases(closure) == maximal_members(closure)


def test_restrictions_of_simplicial_families_exhaustive():
    """All families on n <= 4 and every restriction set."""
    for n in range(1, 5):
        ground = GroundSet.of_size(n)
        for mask in range(1, 1 << ground.num_subsets):
            family = SetFamily.from_mask(ground, mask)
            simplicial = bool(is_simplicial(family))
            constructible = bool(is_constructible(family))
            for a in range(ground.num_subsets):
                r = restriction(family, a)
                if simplicial and r:
                    assert is_simplicial(r)
                if constructible:
                    assert is_constructible(r)
