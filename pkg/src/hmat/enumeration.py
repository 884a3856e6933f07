"""Exhaustive and seeded-random generation of families, H specs, rank tables
and set functions, plus a registry of sweep predicates that search for
counterexamples to the theory's statements.

Every stream is canonical: families come in increasing order of their
characteristic mask ``sum(1 << code)``, rank tables in lexicographic order of
their value tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterator

from hmat.errors import BudgetExceeded, UnknownPredicate
from hmat.family import (
    GroundSet,
    SetFamily,
    SubsetCode,
    downward_closure,
    elements,
    is_constructible,
    is_simplicial,
    is_subset,
    maximal_members,
)
from hmat.hmatroid import HSpec, h_specs_on, is_h_matroid, rank_quadruple_submodularity, satisfies_axiom_M
from hmat.limits import FAMILY_SWEEP_CAP, SPEC_SWEEP_CAP, cap
from hmat.poset import FinitePoset, is_h_supermatroid
from hmat.rank import (
    RankTable,
    first_difference,
    independence_family_of,
    is_normalized_unit_increasing,
    rank_from_family,
    satisfies_extension_property,
    theorem_roundtrip,
)
from hmat.submodular import ValuedSetFunction, equivalence_check_prop


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 3
    sample_count: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise BudgetExceeded("max_n must be at least 1")
        if self.sample_count < 0:
            raise BudgetExceeded("sample_count must be nonnegative")
        if not 0 <= self.seed < 1 << 64:
            raise BudgetExceeded("seed must fit in 64 bits")


def _require(n: int, default_cap: int, what: str) -> None:
    limit = cap(default_cap)
    if not 1 <= n <= limit:
        raise BudgetExceeded(f"{what} is exhaustive only for 1 <= n <= {limit}, got n={n}")


def _antichains(codes: list[SubsetCode], start: int, chosen: list[SubsetCode]) -> Iterator[list[SubsetCode]]:
    yield chosen
    for k in range(start, len(codes)):
        x = codes[k]
        if all(not is_subset(x, c) and not is_subset(c, x) for c in chosen):
            chosen.append(x)
            yield from _antichains(codes, k + 1, chosen)
            chosen.pop()


def all_simplicial_complexes(n: int) -> Iterator[SetFamily]:
    """Every nonempty downward-closed family, one per antichain of maximal sets."""
    _require(n, FAMILY_SWEEP_CAP, "simplicial complex enumeration")
    ground = GroundSet.of_size(n)
    found = [
        downward_closure(SetFamily.of(ground, chosen))
        for chosen in _antichains(list(range(ground.num_subsets)), 0, [])
        if chosen
    ]
    yield from sorted(found, key=lambda f: f.mask)


def all_families(n: int) -> Iterator[SetFamily]:
    """Every family on n elements, the empty family included."""
    _require(n, SPEC_SWEEP_CAP, "family enumeration")
    ground = GroundSet.of_size(n)
    for mask in range(1 << ground.num_subsets):
        yield SetFamily.from_mask(ground, mask)


def all_constructible_families(n: int) -> Iterator[SetFamily]:
    for family in all_families(n):
        if is_constructible(family):
            yield family


def all_h_specs(n: int) -> Iterator[HSpec]:
    _require(n, SPEC_SWEEP_CAP, "H spec enumeration")
    yield from h_specs_on(GroundSet.of_size(n))


def all_normalized_ui_tables(n: int) -> Iterator[RankTable]:
    """Depth-first over subset codes; each value is bounded by its one-element-smaller subsets."""
    _require(n, SPEC_SWEEP_CAP, "rank table enumeration")
    ground = GroundSet.of_size(n)
    size = ground.num_subsets
    values = [0] * size

    def extend(x: int) -> Iterator[RankTable]:
        if x == size:
            yield RankTable(ground, tuple(values))
            return
        below = [values[x ^ (1 << e)] for e in elements(x)]
        for v in range(max(below), min(below) + 2):
            values[x] = v
            yield from extend(x + 1)

    yield from extend(1)


def all_integer_functions(n: int, max_value: int = 3) -> Iterator[ValuedSetFunction]:
    """Every f on the power set with f(empty) = 0 and values in 0..max_value."""
    _require(n, SPEC_SWEEP_CAP, "set function enumeration")
    ground = GroundSet.of_size(n)
    for vals in product(range(max_value + 1), repeat=ground.num_subsets - 1):
        table = (0, *vals)
        yield ValuedSetFunction.on_power_set(ground, table.__getitem__)


def random_antichain(ground: GroundSet, rng: random.Random) -> SetFamily:
    picks = [rng.randrange(ground.num_subsets) for _ in range(rng.randint(1, ground.size + 1))]
    return maximal_members(SetFamily.of(ground, picks))


def thin_out(closure: SetFamily, rng: random.Random) -> SetFamily:
    """Randomly drop non-maximal members of ``closure`` while keeping it constructible."""
    tops = set(maximal_members(closure).members)
    members = set(closure.members)
    candidates = sorted(members - tops)
    rng.shuffle(candidates)
    for x in candidates:
        if rng.random() < 0.5:
            continue
        trial = SetFamily.of(closure.ground, members - {x})
        if is_constructible(trial):
            members.discard(x)
    return SetFamily.of(closure.ground, members)


def random_constructible_family(ground: GroundSet, rng: random.Random) -> SetFamily:
    return thin_out(downward_closure(random_antichain(ground, rng)), rng)


# --- sweep predicates -------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    predicate: str
    n: int
    witness: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Predicate:
    run: Callable[[int, EnumerationBudget], dict[str, Any] | None]
    anchor: str
    max_n: int
    negated: bool = False
    description: str = ""


def _forward(n: int, budget: EnumerationBudget) -> dict | None:
    specs = list(all_h_specs(n))
    for family in all_simplicial_complexes(n):
        rho = rank_from_family(family)
        ui = is_normalized_unit_increasing(rho)
        for h in specs:
            if not is_h_matroid(family, h):
                continue
            if not ui:
                return {"family": family, "h": h, "failed": "(UI)", "detail": ui.witness}
            ext = satisfies_extension_property(rho, h)
            if not ext:
                return {"family": family, "h": h, "failed": "(E)", "detail": ext.witness}
    return None


def _backward(n: int, budget: EnumerationBudget) -> dict | None:
    specs = list(all_h_specs(n))
    for rho in all_normalized_ui_tables(n):
        for h in specs:
            if not satisfies_extension_property(rho, h):
                continue
            report = theorem_roundtrip(rho, h)
            if not report:
                bad = report.first_failure
                return {"rank": rho, "h": h, "failed": bad.check, "detail": bad.witness}
    return None


def _backward_on_h(n: int, budget: EnumerationBudget) -> dict | None:
    specs = list(all_h_specs(n))
    for rho in all_normalized_ui_tables(n):
        for h in specs:
            if not satisfies_extension_property(rho, h):
                continue
            family = independence_family_of(rho)
            report = is_h_matroid(family, h)
            if not report or not is_simplicial(family):
                return {"rank": rho, "h": h, "failed": "h-matroid", "family": family}
            rebuilt = rank_from_family(family)
            for hh in h:
                if rebuilt[hh] != rho[hh]:
                    return {"rank": rho, "h": h, "failed": "rank-on-h", "detail": {"H": hh}}
    return None


def _prop_3_1(n: int, budget: EnumerationBudget) -> dict | None:
    if n <= cap(SPEC_SWEEP_CAP):
        by_max: dict[tuple[int, ...], tuple[SetFamily, RankTable]] = {}
        for family in all_constructible_families(n):
            key = maximal_members(family).members
            rho = rank_from_family(family)
            if key not in by_max:
                by_max[key] = (family, rho)
                continue
            first, first_rho = by_max[key]
            diff = first_difference(first_rho, rho)
            if diff is not None:
                return {"family": first, "other": family, "detail": {"X": diff}}
        return None
    rng = random.Random(budget.seed)
    ground = GroundSet.of_size(n)
    for _ in range(budget.sample_count):
        closure = downward_closure(random_antichain(ground, rng))
        one, two = thin_out(closure, rng), thin_out(closure, rng)
        diff = first_difference(rank_from_family(one), rank_from_family(two))
        if diff is not None:
            return {"family": one, "other": two, "detail": {"X": diff}}
    return None


def _claim_3_2_one(family: SetFamily) -> dict | None:
    closure = downward_closure(family)
    if not is_simplicial(closure):
        return {"family": family, "failed": "simplicial"}
    if maximal_members(closure) != maximal_members(family):
        return {"family": family, "failed": "Max"}
    diff = first_difference(rank_from_family(closure), rank_from_family(family))
    if diff is not None:
        return {"family": family, "failed": "rank", "detail": {"X": diff}}
    return None


def _claim_3_2(n: int, budget: EnumerationBudget) -> dict | None:
    if n <= cap(SPEC_SWEEP_CAP):
        stream: Iterator[SetFamily] = all_constructible_families(n)
    else:
        rng = random.Random(budget.seed)
        ground = GroundSet.of_size(n)
        stream = (random_constructible_family(ground, rng) for _ in range(budget.sample_count))
    for family in stream:
        found = _claim_3_2_one(family)
        if found:
            return found
    return None


def _lemma_4_2(n: int, budget: EnumerationBudget) -> dict | None:
    specs = list(all_h_specs(n))
    for family in all_constructible_families(n):
        rho = rank_from_family(family)
        for h in specs:
            if not is_h_matroid(family, h):
                continue
            check = rank_quadruple_submodularity(rho, h)
            if not check:
                return {"family": family, "h": h, "detail": check.witness}
    return None


def _prop_4_4(n: int, budget: EnumerationBudget) -> dict | None:
    if n <= cap(SPEC_SWEEP_CAP):
        stream: Iterator[ValuedSetFunction] = all_integer_functions(n)
        mode = "exhaustive"
    else:
        rng = random.Random(budget.seed)
        ground = GroundSet.of_size(n)
        size = ground.num_subsets
        stream = (
            ValuedSetFunction.on_power_set(
                ground, (0, *(rng.randint(0, 3) for _ in range(size - 1))).__getitem__
            )
            for _ in range(budget.sample_count)
        )
        mode = "witness"
    for f in stream:
        report = equivalence_check_prop(f, mode)
        if not report:
            return {"function": f, "detail": report.first_failure.witness}
    return None


def _boolean_agreement(n: int, budget: EnumerationBudget, simplicial_only: bool = False) -> dict | None:
    poset = FinitePoset.boolean_lattice(n)
    specs = list(all_h_specs(n))
    families = all_simplicial_complexes(n) if simplicial_only else all_families(n)
    for family in families:
        for h in specs:
            matroid = is_h_matroid(family, h).holds
            supermatroid = is_h_supermatroid(poset, family.members, h.members).holds
            if matroid != supermatroid:
                return {
                    "family": family,
                    "h": h,
                    "detail": {"h_matroid": matroid, "h_supermatroid": supermatroid},
                }
    return None


def _matroid_implies_supermatroid(n: int, budget: EnumerationBudget) -> dict | None:
    poset = FinitePoset.boolean_lattice(n)
    specs = list(all_h_specs(n))
    for family in all_constructible_families(n):
        for h in specs:
            if is_h_matroid(family, h) and not is_h_supermatroid(poset, family.members, h.members):
                return {"family": family, "h": h}
    return None


def _negated_m(n: int, budget: EnumerationBudget) -> dict | None:
    h = HSpec.trivial(GroundSet.of_size(n))
    for family in all_constructible_families(n):
        check = satisfies_axiom_M(family, h)
        if not check:
            return {"family": family, "h": h, "detail": check.witness}
    return None


PREDICATES: dict[str, Predicate] = {
    "theorem-1.1-forward": Predicate(
        _forward, "(E)", SPEC_SWEEP_CAP,
        description="simplicial H-matroid ranks are normalized, unit-increasing, with (E)",
    ),
    "theorem-1.1-backward": Predicate(
        _backward, "(E)", SPEC_SWEEP_CAP,
        description="(UI) + (E) tables give a simplicial H-matroid reproducing the whole table",
    ),
    "theorem-1.1-backward-on-h": Predicate(
        _backward_on_h, "(E)", SPEC_SWEEP_CAP,
        description="(UI) + (E) tables give a simplicial H-matroid whose rank agrees on H",
    ),
    "prop-3.1": Predicate(
        _prop_3_1, "rank", FAMILY_SWEEP_CAP,
        description="constructible families with equal Max have equal rank",
    ),
    "claim-3.2": Predicate(
        _claim_3_2, "Max", FAMILY_SWEEP_CAP,
        description="downward closure is simplicial and keeps Max and rank",
    ),
    "lemma-4.2": Predicate(
        _lemma_4_2, "Lemma 4.2", SPEC_SWEEP_CAP,
        description="H-matroid ranks satisfy the quadruple inequality over H",
    ),
    "prop-4.4": Predicate(
        _prop_4_4, "(S)", FAMILY_SWEEP_CAP,
        description="polymatroid iff H-submodular for every H",
    ),
    "boolean-supermatroid-agreement": Predicate(
        _boolean_agreement, "height-equality", SPEC_SWEEP_CAP,
        description="on the Boolean lattice, H-supermatroid verdict equals H-matroid verdict",
    ),
    "boolean-supermatroid-agreement-simplicial": Predicate(
        lambda n, b: _boolean_agreement(n, b, simplicial_only=True), "height-equality", SPEC_SWEEP_CAP,
        description="the same agreement restricted to simplicial complexes",
    ),
    "hmatroid-implies-supermatroid": Predicate(
        _matroid_implies_supermatroid, "height-equality", SPEC_SWEEP_CAP,
        description="every H-matroid is an H-supermatroid on the Boolean lattice",
    ),
    "fixture-negated-M": Predicate(
        _negated_m, "(M)", SPEC_SWEEP_CAP, negated=True,
        description="deliberately false: (M) holds for every constructible family",
    ),
}


def find_counterexample(predicate_id: str, budget: EnumerationBudget) -> Counterexample | None:
    """Sweep n = 1 .. budget.max_n and return the first counterexample found."""
    try:
        predicate = PREDICATES[predicate_id]
    except KeyError:
        raise UnknownPredicate(
            f"unknown predicate {predicate_id!r}; known: {', '.join(PREDICATES)}"
        ) from None
    limit = cap(predicate.max_n)
    if budget.max_n > limit:
        raise BudgetExceeded(f"{predicate_id} supports n <= {limit}, got n={budget.max_n}")
    for n in range(1, budget.max_n + 1):
        witness = predicate.run(n, budget)
        if witness is not None:
            return Counterexample(predicate_id, n, witness)
    return None
