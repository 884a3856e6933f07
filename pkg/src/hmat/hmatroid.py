"""H-independence systems, H-matroids and rank submodularity over H."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from hmat.errors import NotConstructible
from hmat.family import (
    GroundSet,
    SetFamily,
    SubsetCode,
    bases,
    elements,
    is_constructible,
    is_subset,
    restriction,
)
from hmat.rank import RankTable, rank_from_family
from hmat.report import Check, Report


@dataclass(frozen=True)
class HSpec:
    """The family H; always contains the empty set and the whole ground set."""

    family: SetFamily

    def __post_init__(self) -> None:
        if 0 not in self.family or self.family.ground.full not in self.family:
            raise ValueError("H must contain the empty set and the ground set")

    @classmethod
    def of(cls, ground: GroundSet, codes) -> HSpec:
        return cls(SetFamily.of(ground, [0, ground.full, *codes]))

    @classmethod
    def trivial(cls, ground: GroundSet) -> HSpec:
        return cls.of(ground, ())

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def members(self) -> tuple[SubsetCode, ...]:
        return self.family.members

    def __iter__(self):
        return iter(self.family.members)

    def __contains__(self, code: object) -> bool:
        return code in self.family


def h_specs_on(ground: GroundSet) -> Iterator[HSpec]:
    """Every valid H on ``ground``, in increasing order of family mask."""
    free = list(range(1, ground.full))
    for choice in range(1 << len(free)):
        yield HSpec.of(ground, (free[k] for k in elements(choice)))


def _constructible_rank(family: SetFamily) -> RankTable:
    check = is_constructible(family)
    if not check:
        raise NotConstructible(f"family is not constructible: {check.witness}")
    return rank_from_family(family)


def satisfies_axiom_I(family: SetFamily, h: HSpec, rho: RankTable | None = None) -> Check:
    """Each ``H`` contains a member whose size equals ``rho(H)``."""
    if rho is None:
        rho = _constructible_rank(family)
    for hh in h:
        target = rho[hh]
        if not any(i.bit_count() == target and is_subset(i, hh) for i in family):
            return Check.fail(H=hh, rank=target)
    return Check.ok()


def satisfies_axiom_M(family: SetFamily, h: HSpec, rho: RankTable | None = None) -> Check:
    """Each base of the restriction to ``H`` has size ``rho(H)``.

    ``rho`` is the rank of the whole family, evaluated at ``H``.
    """
    if rho is None:
        rho = _constructible_rank(family)
    for hh in h:
        target = rho[hh]
        for b in bases(restriction(family, hh)):
            if b.bit_count() != target:
                return Check.fail(H=hh, B=b, size=b.bit_count(), rank=target)
    return Check.ok()


def is_h_matroid(family: SetFamily, h: HSpec) -> Report:
    report = Report()
    if not report.add("constructible", "(C)", is_constructible(family)):
        return report
    rho = rank_from_family(family)
    report.add("axiom-I", "(I)", satisfies_axiom_I(family, h, rho))
    report.add("axiom-M", "(M)", satisfies_axiom_M(family, h, rho))
    return report


def rank_quadruple_submodularity(rho: RankTable, h: HSpec) -> Check:
    """``rho(H1) + rho(H2) <= rho(G1) + rho(G2)`` on admissible quadruples from H.

    Admissible means ``H1 <= H2``, ``H1 <= G1 & G2`` and ``H2 <= G1 | G2``.
    The witness is the first violation with ``(H1, H2)`` outermost.
    """
    specs = h.members
    covers = [(g1, g2, g1 & g2, g1 | g2) for g1 in specs for g2 in specs]
    for h1 in specs:
        for h2 in specs:
            if h1 & ~h2:
                continue
            lhs = rho[h1] + rho[h2]
            for g1, g2, meet, join in covers:
                if h1 & ~meet or h2 & ~join:
                    continue
                if lhs > rho[g1] + rho[g2]:
                    return Check.fail(H1=h1, H2=h2, G1=g1, G2=g2)
    return Check.ok()
