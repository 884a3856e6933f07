from __future__ import annotations

import sys

import pytest

from hmat.family import GroundSet, SetFamily, elements
from hmat.hmatroid import HSpec

E3 = GroundSet.of_size(3)
E2 = GroundSet.of_size(2)

# Example families on E = {1, 2, 3}
I1 = [[], [2], [1, 2], [2, 3]]
I2 = [[], [1], [3], [1, 2], [2, 3]]
I3 = [[], [1], [2], [3], [1, 2], [2, 3]]
EXAMPLE_RANK = {(): 0, (1,): 1, (2,): 1, (3,): 1, (1, 3): 1, (1, 2): 2, (2, 3): 2, (1, 2, 3): 2}


def code(ground: GroundSet, labels) -> int:
    return ground.code(str(x) for x in labels)


def fam(ground: GroundSet, sets) -> SetFamily:
    return SetFamily.from_labels(ground, [[str(x) for x in s] for s in sets])


def hspec(ground: GroundSet, *sets) -> HSpec:
    return HSpec.of(ground, [code(ground, s) for s in sets])


def frozen(x: int) -> frozenset:
    """Subset code to a frozenset of 1-based element numbers."""
    return frozenset(e + 1 for e in elements(x))


def frozen_family(family) -> set:
    return {frozen(x) for x in family}


@pytest.fixture
def e3() -> GroundSet:
    return E3


@pytest.fixture
def example_families():
    return {"I1": fam(E3, I1), "I2": fam(E3, I2), "I3": fam(E3, I3)}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
