"""Ground sets, subset codes and set families.

A subset of an ``n``-element ground set is an ``int`` whose bit ``i`` is set
iff element ``i`` belongs to it.  A :class:`SetFamily` keeps its members as a
strictly increasing tuple of such codes, which is the canonical form used for
equality and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from hmat.errors import EmptyFamily, NotAMember
from hmat.limits import GROUND_CAP, cap
from hmat.report import Check

SubsetCode = int


def elements(code: SubsetCode) -> Iterator[int]:
    """Yield the element indices of ``code`` in increasing order."""
    while code:
        low = code & -code
        yield low.bit_length() - 1
        code ^= low


def submasks(code: SubsetCode) -> Iterator[SubsetCode]:
    """Yield every subset of ``code``, including ``code`` and 0, descending."""
    sub = code
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & code


def is_subset(a: SubsetCode, b: SubsetCode) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        limit = cap(GROUND_CAP)
        if not 1 <= len(self.labels) <= limit:
            raise ValueError(f"ground set size must be in [1, {limit}], got {len(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("ground set labels must be distinct")

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        """Ground set labelled ``"1"`` .. ``"n"``."""
        return cls(tuple(str(i + 1) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> SubsetCode:
        return (1 << self.size) - 1

    @property
    def num_subsets(self) -> int:
        return 1 << self.size

    def code(self, labels: Iterable) -> SubsetCode:
        index = {lab: i for i, lab in enumerate(self.labels)}
        out = 0
        for lab in labels:
            try:
                out |= 1 << index[str(lab)]
            except KeyError:
                raise ValueError(f"label {lab!r} is not in the ground set") from None
        return out

    def names(self, code: SubsetCode) -> list[str]:
        return [self.labels[i] for i in elements(code)]

    def format(self, code: SubsetCode) -> str:
        return "{" + ",".join(self.names(code)) + "}"


@dataclass(frozen=True)
class SetFamily:
    ground: GroundSet
    members: tuple[SubsetCode, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        full = self.ground.full
        for a, b in zip(members, members[1:]):
            if a >= b:
                raise ValueError("members must be strictly increasing")
        for m in members:
            if not 0 <= m <= full:
                raise ValueError(f"subset code {m} out of range for n={self.ground.size}")
        object.__setattr__(self, "_index", frozenset(members))

    @classmethod
    def of(cls, ground: GroundSet, codes: Iterable[SubsetCode]) -> SetFamily:
        return cls(ground, tuple(sorted(set(codes))))

    @classmethod
    def from_labels(cls, ground: GroundSet, sets: Iterable[Iterable]) -> SetFamily:
        return cls.of(ground, (ground.code(s) for s in sets))

    @classmethod
    def power_set(cls, ground: GroundSet) -> SetFamily:
        return cls(ground, tuple(range(ground.num_subsets)))

    @classmethod
    def from_mask(cls, ground: GroundSet, mask: int) -> SetFamily:
        """Family whose characteristic vector over subset codes is ``mask``."""
        return cls(ground, tuple(elements(mask)))

    @property
    def mask(self) -> int:
        out = 0
        for m in self.members:
            out |= 1 << m
        return out

    def __contains__(self, code: object) -> bool:
        return code in self._index

    def __iter__(self) -> Iterator[SubsetCode]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def to_labels(self) -> list[list[str]]:
        return [self.ground.names(m) for m in self.members]

    def __str__(self) -> str:
        return "{" + ", ".join(self.ground.format(m) for m in self.members) + "}"


def _require_member(family: SetFamily, i: SubsetCode) -> None:
    if i not in family:
        raise NotAMember(f"{family.ground.format(i)} is not a member")


def _require_nonempty(family: SetFamily) -> None:
    if not family:
        raise EmptyFamily("family has no members")


def extreme_points(family: SetFamily, i: SubsetCode) -> SubsetCode:
    """Elements of ``i`` whose removal leaves a member of ``family``."""
    _require_member(family, i)
    out = 0
    for e in elements(i):
        if i ^ (1 << e) in family:
            out |= 1 << e
    return out


def co_extreme_points(family: SetFamily, i: SubsetCode) -> SubsetCode:
    """Elements outside ``i`` whose addition gives a member of ``family``."""
    _require_member(family, i)
    out = 0
    for e in elements(family.ground.full & ~i):
        if i | (1 << e) in family:
            out |= 1 << e
    return out


def maximal_members(family: SetFamily) -> SetFamily:
    _require_nonempty(family)
    members = family.members
    keep = [
        a for a in members
        if not any(b != a and is_subset(a, b) for b in members)
    ]
    return SetFamily(family.ground, tuple(keep))


def bases(family: SetFamily) -> SetFamily:
    """Members that cannot be enlarged by a single element within the family."""
    _require_nonempty(family)
    return SetFamily(
        family.ground,
        tuple(i for i in family.members if co_extreme_points(family, i) == 0),
    )


def is_constructible(family: SetFamily) -> Check:
    """Every nonempty member has a removable element.

    The witness is the smallest member with no extreme point, or the tag
    ``EmptyFamily`` when there are no members at all.
    """
    if not family:
        return Check.fail(tag="EmptyFamily")
    for i in family.members:
        if i and extreme_points(family, i) == 0:
            return Check.fail(I=i)
    assert 0 in family
    return Check.ok()


def restriction(family: SetFamily, a: SubsetCode) -> SetFamily:
    return SetFamily(family.ground, tuple(i for i in family.members if is_subset(i, a)))


def is_simplicial(family: SetFamily) -> Check:
    """Downward closure test, via ``extreme_points(I) == I`` for every member."""
    _require_nonempty(family)
    for i in family.members:
        missing = i & ~extreme_points(family, i)
        if missing:
            return Check.fail(I=i, e=next(elements(missing)))
    return Check.ok()


def downward_closure(family: SetFamily) -> SetFamily:
    """All subsets contained (not necessarily properly) in some member."""
    _require_nonempty(family)
    seen: set[SubsetCode] = set()
    # seen stays downward closed, so a member already in it adds nothing
    for top in reversed(family.members):
        if top not in seen:
            seen.update(submasks(top))
    return SetFamily.of(family.ground, seen)
