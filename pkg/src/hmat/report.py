"""Verdict objects returned by the checkers.

A :class:`Check` is a boolean that also carries a witness.  A :class:`Report`
is an ordered list of named checks, each tagged with the anchor string of the
property it verifies.

Witness dictionaries follow one naming convention so that renderers can turn
raw codes back into labels: keys starting with an upper-case letter hold
subset codes (or poset element indices in poset reports), the key ``"e"``
holds a ground-set element index, and every other key holds a plain value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

ANCHORS = (
    "(C)",
    "(I)",
    "(M)",
    "(E)",
    "(UI)",
    "(S)",
    "Lemma 4.2",
    "accessibility",
    "height-equality",
    "simplicial",
    "Max",
    "rank",
    "polymatroid",
    "lattice",
    "P(f)",
    "B(f)",
)


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def ok(cls) -> Check:
        return cls(True)

    @classmethod
    def fail(cls, **witness: Any) -> Check:
        return cls(False, witness)


@dataclass(frozen=True)
class Record:
    check: str
    anchor: str
    holds: bool
    witness: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if self.anchor not in ANCHORS:
            raise ValueError(f"unknown anchor {self.anchor!r}")


@dataclass
class Report:
    """Ordered check records plus optional payload data.

    ``holds`` is the conjunction of all records; an empty report holds.
    """

    records: list[Record] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, check: str, anchor: str, result: Check | bool, witness=None) -> bool:
        if isinstance(result, Check):
            holds, witness = result.holds, result.witness
        else:
            holds = bool(result)
        self.records.append(Record(check, anchor, holds, None if holds else witness))
        return holds

    def extend(self, other: Report) -> bool:
        self.records.extend(other.records)
        return other.holds

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.records)

    def __bool__(self) -> bool:
        return self.holds

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    @property
    def first_failure(self) -> Record | None:
        return next((r for r in self.records if not r.holds), None)

    def record(self, check: str) -> Record:
        for r in self.records:
            if r.check == check:
                return r
        raise KeyError(check)
