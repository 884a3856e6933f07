"""Rank tables and the rank characterization of simplicial H-matroids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterator

from hmat.errors import NotConstructible, NotUnitIncreasing
from hmat.family import GroundSet, SetFamily, SubsetCode, elements, is_constructible, is_simplicial
from hmat.report import Check, Report

if TYPE_CHECKING:
    from hmat.hmatroid import HSpec


@dataclass(frozen=True)
class RankTable:
    """Dense integer table indexed by subset code."""

    ground: GroundSet
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.ground.num_subsets:
            raise ValueError(f"rank table needs {self.ground.num_subsets} entries, got {len(values)}")
        if any(v < 0 for v in values):
            raise ValueError("rank values must be nonnegative")

    @classmethod
    def from_function(cls, ground: GroundSet, fn: Callable[[SubsetCode], int]) -> RankTable:
        return cls(ground, tuple(fn(x) for x in range(ground.num_subsets)))

    @classmethod
    def zero(cls, ground: GroundSet) -> RankTable:
        return cls(ground, (0,) * ground.num_subsets)

    def __getitem__(self, x: SubsetCode) -> int:
        return self.values[x]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


def rank_from_family(family: SetFamily) -> RankTable:
    """``rho(X) = max |X & I|`` over all members ``I``."""
    check = is_constructible(family)
    if not check:
        raise NotConstructible(f"family is not constructible: {check.witness}")
    members = family.members
    return RankTable(
        family.ground,
        tuple(
            max((x & i).bit_count() for i in members)
            for x in range(family.ground.num_subsets)
        ),
    )


def is_normalized_unit_increasing(rho: RankTable) -> Check:
    """``rho(0) == 0`` and each single-element step raises rho by 0 or 1.

    The single-step form implies the two-sided bound for every nested pair
    by walking a chain between them.
    """
    if rho[0] != 0:
        return Check.fail(X=0, reason="not normalized")
    n = rho.ground.size
    for x in range(rho.ground.num_subsets):
        base = rho[x]
        for e in range(n):
            bit = 1 << e
            if x & bit:
                continue
            step = rho[x | bit] - base
            if step < 0 or step > 1:
                return Check.fail(X=x, e=e, step=step)
    return Check.ok()


def _require_ui(rho: RankTable) -> None:
    check = is_normalized_unit_increasing(rho)
    if not check:
        raise NotUnitIncreasing(f"rank table violates (UI): {check.witness}")


def satisfies_extension_property(rho: RankTable, h: HSpec) -> Check:
    """Every independent ``X`` inside ``H`` with ``rho(X) < rho(H)`` extends by one.

    Here independent means ``rho(X) == |X|``.  The witness is the smallest
    violating ``(X, H)`` in code order.
    """
    _require_ui(rho)
    specs = h.family.members
    for x in range(rho.ground.num_subsets):
        rx = rho[x]
        if rx != x.bit_count():
            continue
        for hh in specs:
            if x & ~hh or rx >= rho[hh]:
                continue
            if not any(rho[x | (1 << e)] == rx + 1 for e in elements(hh & ~x)):
                return Check.fail(X=x, H=hh)
    return Check.ok()


def independence_family_of(rho: RankTable) -> SetFamily:
    """The sets on which ``rho`` equals cardinality."""
    _require_ui(rho)
    return SetFamily(
        rho.ground,
        tuple(x for x in range(rho.ground.num_subsets) if rho[x] == x.bit_count()),
    )


def first_difference(a: RankTable, b: RankTable) -> SubsetCode | None:
    for x, (u, v) in enumerate(zip(a.values, b.values)):
        if u != v:
            return x
    return None


def theorem_roundtrip(rho: RankTable, h: HSpec) -> Report:
    """Rebuild an H-matroid from ``rho`` and confirm it reproduces ``rho``.

    The report stops after the first failing premise, (UI) or (E).  When both
    pass, ``report.data["family"]`` holds the realizing family ``I_rho``; it
    is one realization, not the only one.
    """
    from hmat.hmatroid import is_h_matroid

    report = Report()
    if not report.add("normalized-unit-increasing", "(UI)", is_normalized_unit_increasing(rho)):
        return report
    if not report.add("extension-property", "(E)", satisfies_extension_property(rho, h)):
        return report

    family = independence_family_of(rho)
    report.data["family"] = family
    report.extend(is_h_matroid(family, h))

    rebuilt = rank_from_family(family)
    diff = first_difference(rebuilt, rho)
    if diff is None:
        report.add("rank-reproduced", "rank", True)
    else:
        report.add("rank-reproduced", "rank", Check.fail(X=diff, expected=rho[diff], actual=rebuilt[diff]))
    report.add("independence-family-simplicial", "simplicial", is_simplicial(family))
    return report
