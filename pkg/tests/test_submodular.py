from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import E2, E3, code, fam, frozen, frozen_family, hspec
from hmat.enumeration import all_constructible_families, all_h_specs
from hmat.errors import DomainNotPowerSet, EMissingFromDomain, HNotInDomain, TooLargeForExhaustive
from hmat.family import GroundSet, SetFamily
from hmat.hmatroid import HSpec, is_h_matroid
from hmat.rank import rank_from_family
from hmat.submodular import (
    LatticeFamily,
    RationalVector,
    ValuedSetFunction,
    equivalence_check_prop,
    in_base_polyhedron,
    in_submodular_polyhedron,
    is_distributive_lattice_family,
    is_h_submodular,
    is_polymatroid,
)


def card(ground):
    return ValuedSetFunction.on_power_set(ground, int.bit_count)


def unif1(ground):
    return ValuedSetFunction.on_power_set(ground, lambda x: min(x.bit_count(), 1))


def non_monotone():
    return ValuedSetFunction.on_power_set(E2, [0, 2, 2, 1].__getitem__)


def vec(ground, *coords):
    return RationalVector(ground, tuple(Fraction(c) for c in coords))


def test_lattice_family_examples():
    assert is_distributive_lattice_family(SetFamily.power_set(E3))
    assert is_distributive_lattice_family(fam(E2, [[], [1], [2], [1, 2]]))
    assert is_distributive_lattice_family(fam(E3, [[], [1], [2, 3], [1, 2, 3]]))
    check = is_distributive_lattice_family(fam(E3, [[], [1, 2], [2, 3], [1, 2, 3]]))
    assert not check and check.witness == {"X": code(E3, [1, 2]), "Y": code(E3, [2, 3])}
    missing = is_distributive_lattice_family(fam(E3, [[], [1, 2], [2, 3]]))
    assert not missing and missing.witness == {"missing": ["1", "2", "3"]}
    with pytest.raises(ValueError):
        LatticeFamily(fam(E3, [[], [1, 2], [2, 3]]))


def test_function_validation():
    domain = LatticeFamily(fam(E2, [[], [1, 2]]))
    with pytest.raises(ValueError):
        ValuedSetFunction(domain, {0: 0})
    f = ValuedSetFunction(domain, {0: 0, 3: Fraction(1, 2)})
    assert f(3) == Fraction(1, 2)


def test_h_submodular_examples():
    for h in all_h_specs(3):
        assert is_h_submodular(card(E3), h)
    check = is_h_submodular(non_monotone(), hspec(E2, [1]))
    assert not check
    # first failing (H1, H2) in code order is (0, {1}), closed off by X=0, Y=E
    assert check.witness == {"X": 0, "Y": 3, "H1": 0, "H2": 1}
    f = non_monotone()
    assert f(1) + f(1) > f(3) + f(3)
    assert is_h_submodular(card(E2), HSpec.trivial(E2))


def test_h_submodular_on_sublattice():
    domain = LatticeFamily(fam(E2, [[], [1], [1, 2]]))
    f = ValuedSetFunction(domain, {0: 0, 1: 1, 3: 1})
    assert is_h_submodular(f, HSpec.trivial(E2))
    with pytest.raises(HNotInDomain):
        is_h_submodular(f, hspec(E2, [2]))
    with pytest.raises(DomainNotPowerSet):
        is_polymatroid(f)


def test_polymatroid_examples():
    assert is_polymatroid(card(E3))
    assert is_polymatroid(unif1(E3))
    check = is_polymatroid(non_monotone())
    assert not check and check.witness == {"condition": "(ii)", "X": 1, "Y": 3}
    shifted = ValuedSetFunction.on_power_set(E2, lambda x: 1)
    assert is_polymatroid(shifted).witness == {"condition": "(i)", "X": 0}
    square = ValuedSetFunction.on_power_set(E2, lambda x: x.bit_count() ** 2)
    assert is_polymatroid(square).witness["condition"] == "(iii)"


def test_equivalence_examples():
    report = equivalence_check_prop(card(E3), "exhaustive")
    assert report.holds
    assert report.data["polymatroid"] and report.data["h_submodular"]
    assert report.data["specs_tried"] == 64
    bad = equivalence_check_prop(non_monotone(), "witness")
    assert bad.holds
    assert bad.data["polymatroid"] is False
    # the full power set is tried first and already fails
    assert bad.data["failing_h"] == [0, 1, 2, 3]
    assert not is_h_submodular(non_monotone(), hspec(E2, [1]))
    zero = equivalence_check_prop(ValuedSetFunction.on_power_set(E3, lambda x: 0), "exhaustive")
    assert zero.holds and zero.data["polymatroid"]
    with pytest.raises(TooLargeForExhaustive):
        equivalence_check_prop(card(GroundSet.of_size(4)), "exhaustive")
    assert equivalence_check_prop(card(GroundSet.of_size(4)), "witness").holds
    with pytest.raises(ValueError):
        equivalence_check_prop(card(E2), "sampled")


def test_polyhedron_examples():
    assert in_submodular_polyhedron(vec(E3, 0, 0, 0), card(E3))
    check = in_submodular_polyhedron(vec(E2, 1, 1), unif1(E2))
    assert not check and check.witness == {"X": 3, "excess": Fraction(1)}
    assert in_submodular_polyhedron(vec(E2, 1, 0), unif1(E2))


def test_polyhedron_witness_is_maximally_violated():
    f = ValuedSetFunction.on_power_set(E3, lambda x: 0)
    check = in_submodular_polyhedron(vec(E3, 1, 3, 3), f)
    # {2} and {3} tie at 3 but {2,3} exceeds by 6 and E by 7
    assert check.witness == {"X": 7, "excess": Fraction(7)}
    tie = in_submodular_polyhedron(vec(E2, 2, 2), ValuedSetFunction.on_power_set(E2, lambda x: 2 * x.bit_count() - (x == 3) * 2))
    assert tie.witness == {"X": 3, "excess": Fraction(2)}


def test_base_polyhedron_examples():
    assert in_base_polyhedron(vec(E2, 1, 0), unif1(E2))
    check = in_base_polyhedron(vec(E2, 0, 0), card(E2))
    assert not check and check.witness["X"] == 3
    assert in_base_polyhedron(vec(E2, 1, 1), card(E2))
    assert in_base_polyhedron(vec(E2, Fraction(1, 3), Fraction(2, 3)), unif1(E2))
    assert not in_base_polyhedron(vec(E2, Fraction(1, 3), Fraction(2, 3) - Fraction(1, 10**12)), unif1(E2))
    with pytest.raises(EMissingFromDomain):
        in_base_polyhedron(vec(E2, 0, 0), _no_top())


def _no_top():
    # a lattice family must contain E, so build one by bypassing validation
    domain = object.__new__(LatticeFamily)
    object.__setattr__(domain, "family", SetFamily(E2, (0, 1)))
    f = object.__new__(ValuedSetFunction)
    object.__setattr__(f, "domain", domain)
    object.__setattr__(f, "values", {0: Fraction(0), 1: Fraction(1)})
    return f


def test_vector_length_checked():
    with pytest.raises(ValueError):
        vec(E3, 1, 2)


values3 = st.lists(st.integers(0, 3), min_size=7, max_size=7).map(lambda v: [0, *v])


@settings(max_examples=300)
@given(values3)
def test_polymatroid_matches_oracle(values):
    f = ValuedSetFunction.on_power_set(E3, values.__getitem__)
    table = {frozen(x): values[x] for x in range(8)}
    assert bool(is_polymatroid(f)) == oracles.polymatroid(table, frozenset({1, 2, 3}))


@settings(max_examples=60, deadline=None)
@given(values3, st.integers(0, 63))
def test_h_submodular_matches_oracle(values, pick):
    h = list(all_h_specs(3))[pick]
    f = ValuedSetFunction.on_power_set(E3, values.__getitem__)
    table = {frozen(x): values[x] for x in range(8)}
    domain = [frozen(x) for x in range(8)]
    assert bool(is_h_submodular(f, h)) == oracles.h_submodular(table, domain, frozen_family(h.family))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-2, 4), min_size=16, max_size=16))
def test_full_h_submodularity_implies_submodularity_n4(values):
    ground = GroundSet.of_size(4)
    f = ValuedSetFunction.on_power_set(ground, values.__getitem__)
    if is_h_submodular(f, HSpec(SetFamily.power_set(ground))):
        assert all(
            values[x] + values[y] >= values[x & y] + values[x | y]
            for x in range(16) for y in range(16)
        )


def test_h_matroid_ranks_are_h_submodular_within_h():
    """Restricted to X, Y in h, which is the scope the quadruple lemma covers."""
    specs = list(all_h_specs(3))
    for family in list(all_constructible_families(3))[::3]:
        rho = rank_from_family(family)
        for h in specs[::4]:
            if not is_h_matroid(family, h).holds:
                continue
            domain_ok = is_distributive_lattice_family(h.family)
            if domain_ok:
                f = ValuedSetFunction(LatticeFamily(h.family), {x: rho[x] for x in h})
                assert is_h_submodular(f, h)
