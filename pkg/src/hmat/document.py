"""JSON instance documents.

A document names every object it holds; subsets are written as arrays of
ground-set labels and rationals as ``"p/q"`` or integer strings::

    {
      "ground": ["1", "2", "3"],
      "families": {"I1": [[], ["2"], ["1", "2"], ["2", "3"]], "H0set": [[], ["1", "2", "3"]]},
      "h_specs": {"H0": "H0set"},
      "rank_tables": {"rho": [[[], 0], [["1"], 1], ...]},
      "functions": {"f": {"domain": "D", "values": [[[], "0"], [["1"], "1/2"], ...]}},
      "posets": {"P": {"elements": ["0", "a"], "covers": [["0", "a"]], "subsets": {"F": ["0"]}},
                 "B": {"boolean": true}},
      "vectors": {"x": {"1": "1", "2": "0"}}
    }

A poset gives its relation either as ``"leq"`` (the full relation, checked
as is) or ``"covers"`` (closed reflexively and transitively).  A poset marked
``"boolean"`` is the subset lattice of the ground set; its subsets are the
document's families.  :func:`dump` writes the canonical form, which
:func:`parse` reads back to an equal document.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from hmat.errors import ParseError, UnresolvedName
from hmat.family import GroundSet, SetFamily
from hmat.hmatroid import HSpec
from hmat.limits import GROUND_CAP, cap
from hmat.poset import FinitePoset
from hmat.rank import RankTable
from hmat.submodular import LatticeFamily, RationalVector, ValuedSetFunction

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


@dataclass(frozen=True)
class FunctionEntry:
    domain_name: str
    function: ValuedSetFunction


@dataclass(frozen=True)
class PosetEntry:
    poset: FinitePoset
    boolean: bool = False
    subsets: dict[str, tuple[int, ...]] = field(default_factory=dict)


@dataclass
class InstanceDocument:
    ground: GroundSet
    families: dict[str, SetFamily] = field(default_factory=dict)
    h_specs: dict[str, str] = field(default_factory=dict)
    rank_tables: dict[str, RankTable] = field(default_factory=dict)
    functions: dict[str, FunctionEntry] = field(default_factory=dict)
    posets: dict[str, PosetEntry] = field(default_factory=dict)
    vectors: dict[str, RationalVector] = field(default_factory=dict)

    def _get(self, table: dict, kind: str, name: str):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(sorted(table)) or "none"
            raise UnresolvedName(f"no {kind} named {name!r} (known: {known})") from None

    def family(self, name: str) -> SetFamily:
        return self._get(self.families, "family", name)

    def h_spec(self, name: str) -> HSpec:
        return HSpec(self.family(self._get(self.h_specs, "h spec", name)))

    def rank(self, name: str) -> RankTable:
        return self._get(self.rank_tables, "rank table", name)

    def function(self, name: str) -> ValuedSetFunction:
        return self._get(self.functions, "function", name).function

    def poset(self, name: str) -> PosetEntry:
        return self._get(self.posets, "poset", name)

    def vector(self, name: str) -> RationalVector:
        return self._get(self.vectors, "vector", name)

    def poset_subset(self, entry: PosetEntry, name: str) -> tuple[int, ...]:
        if entry.boolean:
            if name in self.h_specs:
                return self.h_spec(name).members
            return self.family(name).members
        return self._get(entry.subsets, "poset subset", name)


def _rational(raw: Any, where: str) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ParseError(f"{where}: rationals must be integers or 'p/q' strings, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str) and _RATIONAL.match(raw):
        try:
            return Fraction(raw.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"{where}: zero denominator in {raw!r}") from None
    raise ParseError(f"{where}: cannot read {raw!r} as a rational")


def _mapping(raw: Any, where: str) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ParseError(f"{where} must be an object")
    return raw


def _subset(ground: GroundSet, raw: Any, where: str) -> int:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: a subset is a list of labels, got {raw!r}")
    try:
        return ground.code(raw)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _subset_table(ground: GroundSet, raw: Any, where: str) -> dict[int, Any]:
    if not isinstance(raw, list):
        raise ParseError(f"{where} must be a list of [subset, value] pairs")
    out: dict[int, Any] = {}
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{where}[{k}] must be a [subset, value] pair")
        code = _subset(ground, pair[0], f"{where}[{k}]")
        if code in out:
            raise ParseError(f"{where}: subset {ground.format(code)} listed twice")
        out[code] = pair[1]
    return out


def parse(raw: dict | str) -> InstanceDocument:
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")

    labels = raw.get("ground")
    if not isinstance(labels, list) or not labels:
        raise ParseError("'ground' must be a nonempty list of labels")
    limit = cap(GROUND_CAP)
    if len(labels) > limit:
        raise ParseError(
            f"ground set has {len(labels)} elements; tables cover 2^n subsets, so n <= {limit}"
        )
    try:
        ground = GroundSet(tuple(str(x) for x in labels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    doc = InstanceDocument(ground)

    for name, sets in _mapping(raw.get("families"), "families").items():
        if not isinstance(sets, list):
            raise ParseError(f"family {name!r} must be a list of subsets")
        doc.families[name] = SetFamily.of(
            ground, (_subset(ground, s, f"family {name!r}") for s in sets)
        )

    for name, ref in _mapping(raw.get("h_specs"), "h_specs").items():
        if not isinstance(ref, str) or ref not in doc.families:
            raise ParseError(f"h spec {name!r} refers to unknown family {ref!r}")
        try:
            HSpec(doc.families[ref])
        except ValueError as exc:
            raise ParseError(f"h spec {name!r}: {exc}") from None
        doc.h_specs[name] = ref

    for name, table in _mapping(raw.get("rank_tables"), "rank_tables").items():
        entries = _subset_table(ground, table, f"rank table {name!r}")
        if len(entries) != ground.num_subsets:
            raise ParseError(
                f"rank table {name!r} must give all {ground.num_subsets} subsets, got {len(entries)}"
            )
        values = []
        for code in range(ground.num_subsets):
            v = entries[code]
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ParseError(f"rank table {name!r}: value {v!r} is not a nonnegative integer")
            values.append(v)
        doc.rank_tables[name] = RankTable(ground, tuple(values))

    for name, spec in _mapping(raw.get("functions"), "functions").items():
        spec = _mapping(spec, f"function {name!r}")
        domain_name = spec.get("domain")
        if not isinstance(domain_name, str) or domain_name not in doc.families:
            raise ParseError(f"function {name!r} refers to unknown domain {domain_name!r}")
        entries = _subset_table(ground, spec.get("values"), f"function {name!r}")
        values = {c: _rational(v, f"function {name!r}") for c, v in entries.items()}
        try:
            domain = LatticeFamily(doc.families[domain_name])
            fn = ValuedSetFunction(domain, values)
        except ValueError as exc:
            raise ParseError(f"function {name!r}: {exc}") from None
        doc.functions[name] = FunctionEntry(domain_name, fn)

    for name, spec in _mapping(raw.get("posets"), "posets").items():
        doc.posets[name] = _parse_poset(ground, name, _mapping(spec, f"poset {name!r}"))

    for name, coords in _mapping(raw.get("vectors"), "vectors").items():
        coords = _mapping(coords, f"vector {name!r}")
        if set(coords) != set(ground.labels):
            raise ParseError(f"vector {name!r} must give exactly one coordinate per ground label")
        doc.vectors[name] = RationalVector(
            ground, tuple(_rational(coords[lab], f"vector {name!r}") for lab in ground.labels)
        )
    return doc


def _parse_poset(ground: GroundSet, name: str, spec: dict) -> PosetEntry:
    if spec.get("boolean"):
        return PosetEntry(FinitePoset.boolean_lattice(ground.size), boolean=True)
    elements = spec.get("elements")
    if not isinstance(elements, list) or not elements:
        raise ParseError(f"poset {name!r} needs a nonempty 'elements' list")
    names = [str(x) for x in elements]
    if len(set(names)) != len(names):
        raise ParseError(f"poset {name!r}: element names must be distinct")
    index = {x: k for k, x in enumerate(names)}

    def pairs(key: str) -> list[tuple[int, int]]:
        out = []
        for p in spec.get(key) or []:
            if not isinstance(p, list) or len(p) != 2 or any(str(x) not in index for x in p):
                raise ParseError(f"poset {name!r}: bad pair {p!r} in {key!r}")
            out.append((index[str(p[0])], index[str(p[1])]))
        return out

    if "leq" in spec:
        poset = FinitePoset.from_pairs(len(names), pairs("leq"), names)
    else:
        poset = FinitePoset.from_covers(len(names), pairs("covers"), names)
    subsets = {}
    for sub_name, members in _mapping(spec.get("subsets"), f"poset {name!r} subsets").items():
        if not isinstance(members, list) or any(str(x) not in index for x in members):
            raise ParseError(f"poset {name!r}: subset {sub_name!r} names unknown elements")
        subsets[sub_name] = tuple(sorted({index[str(x)] for x in members}))
    return PosetEntry(poset, False, subsets)


def dump(doc: InstanceDocument) -> dict:
    """Canonical JSON-ready form of ``doc``."""
    g = doc.ground
    out: dict[str, Any] = {"ground": list(g.labels)}
    if doc.families:
        out["families"] = {k: f.to_labels() for k, f in sorted(doc.families.items())}
    if doc.h_specs:
        out["h_specs"] = dict(sorted(doc.h_specs.items()))
    if doc.rank_tables:
        out["rank_tables"] = {
            k: [[g.names(x), v] for x, v in enumerate(t.values)]
            for k, t in sorted(doc.rank_tables.items())
        }
    if doc.functions:
        out["functions"] = {
            k: {
                "domain": e.domain_name,
                "values": [[g.names(x), str(v)] for x, v in e.function.values.items()],
            }
            for k, e in sorted(doc.functions.items())
        }
    if doc.posets:
        out["posets"] = {k: _dump_poset(e) for k, e in sorted(doc.posets.items())}
    if doc.vectors:
        out["vectors"] = {
            k: {lab: str(c) for lab, c in zip(g.labels, v.coords)}
            for k, v in sorted(doc.vectors.items())
        }
    return out


def _dump_poset(entry: PosetEntry) -> dict:
    if entry.boolean:
        return {"boolean": True}
    p = entry.poset
    return {
        "elements": list(p.names),
        "leq": [[p.names[x], p.names[y]] for x in range(p.size) for y in range(p.size) if p.leq[x][y]],
        "subsets": {k: [p.names[i] for i in v] for k, v in sorted(entry.subsets.items())},
    }


def dumps(doc: InstanceDocument) -> str:
    return json.dumps(dump(doc), indent=2, sort_keys=True) + "\n"


def load(path: str | Path) -> InstanceDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse(text)


def fixture_names() -> list[str]:
    root = resources.files("hmat") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> InstanceDocument:
    path = resources.files("hmat") / "data" / f"{name}.json"
    if not path.is_file():
        raise ParseError(f"no bundled fixture {name!r} (known: {', '.join(fixture_names())})")
    return parse(path.read_text(encoding="utf-8"))
