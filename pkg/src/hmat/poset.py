"""Finite posets with a minimum, heights, accessible subsets and H-supermatroids."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from hmat.errors import InvalidPoset, OutOfRange, ZeroMissing, ZeroMissingFromH
from hmat.report import Check, Report


@dataclass(frozen=True)
class FinitePoset:
    """Full order relation on ``range(size)``; ``leq[x][y]`` iff ``x <= y``.

    Construction validates the partial-order axioms and locates the minimum,
    raising :class:`InvalidPoset` naming the first failing axiom.
    """

    leq: tuple[tuple[bool, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        object.__setattr__(self, "leq", leq)
        m = len(leq)
        if m == 0:
            raise InvalidPoset("nonempty", "a poset needs at least one element")
        if any(len(row) != m for row in leq):
            raise InvalidPoset("square", "relation matrix must be m x m")
        names = tuple(str(x) for x in self.names) or tuple(str(i) for i in range(m))
        if len(names) != m or len(set(names)) != m:
            raise InvalidPoset("names", "element names must be distinct, one per element")
        object.__setattr__(self, "names", names)
        for x in range(m):
            if not leq[x][x]:
                raise InvalidPoset("reflexivity", f"{names[x]} <= {names[x]} missing")
        for x in range(m):
            for y in range(x + 1, m):
                if leq[x][y] and leq[y][x]:
                    raise InvalidPoset("antisymmetry", f"{names[x]} and {names[y]}")
        for x in range(m):
            for y in range(m):
                if not leq[x][y]:
                    continue
                for z in range(m):
                    if leq[y][z] and not leq[x][z]:
                        raise InvalidPoset(
                            "transitivity", f"{names[x]} <= {names[y]} <= {names[z]}"
                        )
        if not any(all(leq[b]) for b in range(m)):
            raise InvalidPoset("minimum", "no element lies below every other")

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> FinitePoset:
        """Use ``pairs`` as the whole relation (validated, not closed)."""
        leq = [[False] * size for _ in range(size)]
        for x, y in pairs:
            leq[x][y] = True
        return cls(tuple(map(tuple, leq)), tuple(names))

    @classmethod
    def from_covers(cls, size: int, covers: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> FinitePoset:
        """Reflexive-transitive closure of the given ``x < y`` pairs."""
        leq = [[x == y for y in range(size)] for x in range(size)]
        for x, y in covers:
            leq[x][y] = True
        for k in range(size):
            for i in range(size):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(size):
                        if row_k[j]:
                            row_i[j] = True
        return cls(tuple(map(tuple, leq)), tuple(names))

    @classmethod
    def boolean_lattice(cls, n: int) -> FinitePoset:
        """Subsets of an n-set under inclusion; element index = subset code."""
        size = 1 << n
        leq = tuple(tuple(x & ~y == 0 for y in range(size)) for x in range(size))
        return cls(leq)

    @classmethod
    def chain(cls, size: int, names: Sequence[str] = ()) -> FinitePoset:
        return cls(tuple(tuple(x <= y for y in range(size)) for x in range(size)), tuple(names))

    @property
    def size(self) -> int:
        return len(self.leq)

    @cached_property
    def bottom(self) -> int:
        return next(b for b in range(self.size) if all(self.leq[b]))

    def index(self, name: str) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise OutOfRange(f"no element named {name!r}") from None

    def _check(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise OutOfRange(f"element {x} not in [0, {self.size})")

    def less(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        """``lower_covers[y]`` lists every ``x`` covered by ``y``."""
        m = self.size
        out = []
        for y in range(m):
            below = [x for x in range(m) if self.less(x, y)]
            out.append(tuple(
                x for x in below if not any(self.less(x, z) for z in below if z != x)
            ))
        return tuple(out)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        # down-set size strictly increases along <, so it is a topological order
        order = sorted(range(self.size), key=lambda y: sum(self.leq[x][y] for x in range(self.size)))
        height = [0] * self.size
        for y in order:
            covers = self.lower_covers[y]
            height[y] = max((height[x] + 1 for x in covers), default=0)
        return tuple(height)


def height(poset: FinitePoset, x: int) -> int:
    """Length of the longest strict chain from the minimum up to ``x``."""
    poset._check(x)
    return poset.heights[x]


def interval(poset: FinitePoset, x: int, y: int) -> tuple[int, ...]:
    poset._check(x)
    poset._check(y)
    return tuple(z for z in range(poset.size) if poset.leq[x][z] and poset.leq[z][y])


def _subset(poset: FinitePoset, family: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(family)))
    for x in members:
        poset._check(x)
    return members


def is_accessible(poset: FinitePoset, family: Iterable[int]) -> Check:
    """Every non-minimum member covers some other member.

    An accessible subset always contains the minimum, so the empty subset is
    rejected with tag ``zero-missing``.
    """
    members = _subset(poset, family)
    present = set(members)
    zero = poset.bottom
    if not members:
        return Check.fail(tag="zero-missing")
    for i in members:
        if i == zero:
            continue
        if not any(x in present for x in poset.lower_covers[i]):
            return Check.fail(I=i)
    assert zero in present
    return Check.ok()


def poset_rank(poset: FinitePoset, family: Iterable[int], x: int) -> int:
    members = _subset(poset, family)
    poset._check(x)
    if poset.bottom not in members:
        raise ZeroMissing("the family must contain the minimum element")
    heights = poset.heights
    return max(heights[i] for i in members if poset.leq[i][x])


def maximal_below(poset: FinitePoset, family: Iterable[int], a: int) -> tuple[int, ...]:
    """Maximal elements of ``family`` intersected with the interval ``[0, a]``."""
    below = [i for i in _subset(poset, family) if poset.leq[i][a]]
    return tuple(i for i in below if not any(poset.less(i, j) for j in below))


def is_h_supermatroid(poset: FinitePoset, family: Iterable[int], h: Iterable[int]) -> Report:
    members = _subset(poset, family)
    specs = _subset(poset, h)
    if poset.bottom not in specs:
        raise ZeroMissingFromH("H must contain the minimum element")
    report = Report()
    if not report.add("accessible", "accessibility", is_accessible(poset, members)):
        return report
    heights = poset.heights
    for a in specs:
        tops = maximal_below(poset, members, a)
        first = tops[0]
        odd = next((t for t in tops if heights[t] != heights[first]), None)
        if odd is not None:
            report.add(
                "equal-heights",
                "height-equality",
                Check.fail(A=a, M1=first, M2=odd, heights=[heights[first], heights[odd]]),
            )
            return report
    report.add("equal-heights", "height-equality", True)
    return report
