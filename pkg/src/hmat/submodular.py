"""H-submodular functions on distributive lattice families, polymatroids,
and membership in the polyhedra P(f) and B(f).

All values are :class:`fractions.Fraction`; no comparison uses a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Literal, Mapping

from hmat.errors import DomainNotPowerSet, EMissingFromDomain, HNotInDomain, TooLargeForExhaustive
from hmat.family import GroundSet, SetFamily, SubsetCode, elements
from hmat.hmatroid import HSpec, h_specs_on
from hmat.limits import SPEC_SWEEP_CAP, cap
from hmat.rank import RankTable
from hmat.report import Check, Report


def is_distributive_lattice_family(family: SetFamily) -> Check:
    full = family.ground.full
    for required in (0, full):
        if required not in family:
            return Check.fail(missing=family.ground.names(required))
    members = family.members
    for a_pos, x in enumerate(members):
        for y in members[a_pos + 1:]:
            if x & y not in family or x | y not in family:
                return Check.fail(X=x, Y=y)
    return Check.ok()


@dataclass(frozen=True)
class LatticeFamily:
    family: SetFamily

    def __post_init__(self) -> None:
        check = is_distributive_lattice_family(self.family)
        if not check:
            raise ValueError(f"not a distributive lattice family: {check.witness}")

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def is_power_set(self) -> bool:
        return len(self.family) == self.ground.num_subsets


@dataclass(frozen=True)
class ValuedSetFunction:
    domain: LatticeFamily
    values: Mapping[SubsetCode, Fraction]
    _pair_bounds: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        values = {int(k): Fraction(v) for k, v in dict(self.values).items()}
        if set(values) != set(self.domain.family.members):
            raise ValueError("values must be given for exactly the domain members")
        object.__setattr__(self, "values", dict(sorted(values.items())))

    @classmethod
    def on_power_set(cls, ground: GroundSet, fn: Callable[[SubsetCode], object]) -> ValuedSetFunction:
        domain = LatticeFamily(SetFamily.power_set(ground))
        return cls(domain, {x: Fraction(fn(x)) for x in range(ground.num_subsets)})

    @classmethod
    def from_rank(cls, rho: RankTable) -> ValuedSetFunction:
        return cls.on_power_set(rho.ground, rho.__getitem__)

    @property
    def ground(self) -> GroundSet:
        return self.domain.ground

    def __call__(self, x: SubsetCode) -> Fraction:
        return self.values[x]

    def __hash__(self) -> int:
        return hash((self.domain, tuple(self.values.items())))

    def pair_bound(self, h1: SubsetCode, h2: SubsetCode) -> tuple[Fraction, SubsetCode, SubsetCode] | None:
        """Smallest ``f(X) + f(Y)`` over domain pairs with ``h1 <= X & Y``, ``h2 <= X | Y``.

        Returns the value and the first minimizing ``(X, Y)`` in code order,
        or ``None`` when no pair qualifies.  Results are memoized per function.
        """
        key = (h1, h2)
        if key in self._pair_bounds:
            return self._pair_bounds[key]
        best = None
        members = self.domain.family.members
        values = self.values
        for x in members:
            if h1 & ~x:
                continue
            fx = values[x]
            for y in members:
                if h1 & ~y or h2 & ~(x | y):
                    continue
                total = fx + values[y]
                if best is None or total < best[0]:
                    best = (total, x, y)
        self._pair_bounds[key] = best
        return best


def is_h_submodular(f: ValuedSetFunction, h: HSpec) -> Check:
    """Condition (S) for every admissible ``(X, Y, H1, H2)``.

    For each nested pair ``H1 <= H2`` from ``h`` the tightest right-hand side
    over all admissible ``X, Y`` is compared against ``f(H1) + f(H2)``.  The
    witness is the first failing ``(H1, H2)`` in code order together with the
    first ``(X, Y)`` attaining that minimum.
    """
    for hh in h:
        if hh not in f.domain.family:
            raise HNotInDomain(f"{f.ground.format(hh)} is not in the domain")
    specs = h.members
    for h1 in specs:
        for h2 in specs:
            if h1 & ~h2:
                continue
            bound = f.pair_bound(h1, h2)
            if bound is None:
                continue
            rhs, x, y = bound
            if f(h1) + f(h2) > rhs:
                return Check.fail(X=x, Y=y, H1=h1, H2=h2)
    return Check.ok()


def _require_power_set(f: ValuedSetFunction) -> None:
    if not f.domain.is_power_set:
        raise DomainNotPowerSet("function must be defined on every subset")


def is_polymatroid(f: ValuedSetFunction) -> Check:
    """Normalized (i), monotone (ii) and submodular (iii)."""
    _require_power_set(f)
    if f(0) != 0:
        return Check.fail(condition="(i)", X=0)
    n = f.ground.size
    for x in range(f.ground.num_subsets):
        for e in range(n):
            y = x | (1 << e)
            if y != x and f(x) > f(y):
                return Check.fail(condition="(ii)", X=x, Y=y)
    size = f.ground.num_subsets
    for x in range(size):
        for y in range(x + 1, size):
            if f(x) + f(y) < f(x & y) + f(x | y):
                return Check.fail(condition="(iii)", X=x, Y=y)
    return Check.ok()


def equivalence_check_prop(
    f: ValuedSetFunction, mode: Literal["exhaustive", "witness"] = "exhaustive"
) -> Report:
    """Compare the polymatroid test with H-submodularity over many H.

    ``exhaustive`` tries every H; ``witness`` only tries the full power set
    and ``{0, X, E}`` for each X, which already force submodularity and
    monotonicity.  The record ``"equivalence"`` holds when both sides agree.
    """
    _require_power_set(f)
    ground = f.ground
    if mode == "exhaustive":
        limit = cap(SPEC_SWEEP_CAP)
        if ground.size > limit:
            raise TooLargeForExhaustive(f"exhaustive H sweep needs n <= {limit}, got {ground.size}")
        specs: Iterable[HSpec] = h_specs_on(ground)
    elif mode == "witness":
        specs = [HSpec(SetFamily.power_set(ground))] + [
            HSpec.of(ground, [x]) for x in range(ground.num_subsets)
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    report = Report()
    poly = is_polymatroid(f)
    failing = None
    tried = 0
    for spec in specs:
        tried += 1
        check = is_h_submodular(f, spec)
        if not check:
            failing = (spec, check)
            break
    all_pass = failing is None
    report.data.update(mode=mode, specs_tried=tried, polymatroid=poly.holds, h_submodular=all_pass)
    if not poly:
        report.data["polymatroid_witness"] = poly.witness
    if failing is not None:
        spec, check = failing
        report.data["failing_h"] = list(spec.members)
        report.data["failing_witness"] = check.witness
    if poly.holds == all_pass:
        report.add("equivalence", "(S)", True)
    else:
        report.add("equivalence", "(S)", Check.fail(polymatroid=poly.holds, h_submodular=all_pass))
    return report


@dataclass(frozen=True)
class RationalVector:
    ground: GroundSet
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.ground.size:
            raise ValueError(f"vector needs {self.ground.size} coordinates, got {len(coords)}")

    def total(self, x: SubsetCode) -> Fraction:
        return sum((self.coords[e] for e in elements(x)), Fraction(0))


def in_submodular_polyhedron(x: RationalVector, f: ValuedSetFunction) -> Check:
    worst = None
    for code in f.domain.family.members:
        excess = x.total(code) - f(code)
        if excess > 0 and (worst is None or excess > worst[0]):
            worst = (excess, code)
    if worst is None:
        return Check.ok()
    return Check.fail(X=worst[1], excess=worst[0])


def in_base_polyhedron(x: RationalVector, f: ValuedSetFunction) -> Check:
    full = f.ground.full
    if full not in f.domain.family:
        raise EMissingFromDomain("the ground set is not in the domain")
    inside = in_submodular_polyhedron(x, f)
    if not inside:
        return inside
    if x.total(full) != f(full):
        return Check.fail(X=full, total=x.total(full), value=f(full))
    return Check.ok()
