"""Command-line front end.

Exit status: 0 the property holds, 1 it fails (witness printed), 2 a
deliberately false fixture predicate produced its witness, 3 usage error,
4 input error (unreadable document, unknown name, violated precondition,
budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from hmat import document as docmod
from hmat.enumeration import PREDICATES, EnumerationBudget, find_counterexample
from hmat.errors import HMatError, UnknownPredicate
from hmat.family import GroundSet, SetFamily, downward_closure, is_constructible, is_simplicial, maximal_members
from hmat.hmatroid import HSpec, is_h_matroid
from hmat.poset import is_h_supermatroid
from hmat.rank import RankTable, first_difference, rank_from_family, theorem_roundtrip
from hmat.report import Check, Report
from hmat.submodular import (
    ValuedSetFunction,
    equivalence_check_prop,
    in_base_polyhedron,
    in_submodular_polyhedron,
    is_h_submodular,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_FIXTURE = 2
EXIT_USAGE = 3
EXIT_INPUT = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is taken
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Domain:
    """Turns raw codes in witnesses and payloads into labels.

    ``subset`` renders values under upper-case keys, ``element`` renders the
    ``"e"`` key.
    """

    def __init__(self, subset: Callable[[int], Any], element: Callable[[int], Any], ground: GroundSet | None):
        self.subset = subset
        self.element = element
        self.ground = ground

    @classmethod
    def of_ground(cls, ground: GroundSet) -> Domain:
        return cls(ground.names, lambda e: ground.labels[e], ground)


def to_plain(value: Any, domain: Domain, key: str = "") -> Any:
    """JSON-ready copy of ``value`` with codes replaced by labels."""
    g = domain.ground
    if isinstance(value, HSpec):
        value = value.family
    if isinstance(value, SetFamily):
        return value.to_labels()
    if isinstance(value, RankTable):
        return [[value.ground.names(x), v] for x, v in enumerate(value.values)]
    if isinstance(value, ValuedSetFunction):
        return [[value.ground.names(x), str(v)] for x, v in value.values.items()]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_plain(v, domain, str(k)) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v, domain, key) for v in value]
    if isinstance(value, bool) or not isinstance(value, int):
        return value
    if key[:1].isupper():
        return domain.subset(value)
    if key == "e" and g is not None:
        return domain.element(value)
    return value


def _text_value(value: Any) -> str:
    if isinstance(value, list) and all(isinstance(x, str) for x in value):
        return "{" + ",".join(value) + "}"
    if isinstance(value, list) and all(isinstance(x, list) for x in value):
        return "{" + ", ".join(_text_value(x) for x in value) + "}"
    if isinstance(value, dict):
        return " ".join(f"{k}={_text_value(v)}" for k, v in value.items())
    return json.dumps(value) if not isinstance(value, str) else value


def render(command: str, report: Report, domain: Domain, emit: str, elapsed: float | None) -> str:
    records = [
        {
            "check": r.check,
            "anchor": r.anchor,
            "verdict": "holds" if r.holds else "fails",
            "witness": None if r.witness is None else to_plain(r.witness, domain),
        }
        for r in report.records
    ]
    data = to_plain(report.data, domain)
    verdict = "holds" if report.holds else "fails"
    if emit == "json":
        out: dict[str, Any] = {"command": command, "records": records, "verdict": verdict, "data": data}
        if elapsed is not None:
            out["elapsed_seconds"] = round(elapsed, 6)
        return json.dumps(out, indent=2, sort_keys=True) + "\n"
    lines = [f"$ {command}"]
    for r in records:
        line = f"[{r['verdict']}] {r['check']} {r['anchor']}"
        if r["witness"] is not None:
            line += ": " + _text_value(r["witness"])
        lines.append(line)
    for k, v in data.items():
        if k == "rank_table":
            lines.append("rank table:")
            lines.extend(f"  {_text_value(s)} {val}" for s, val in v)
        else:
            lines.append(f"{k}: {_text_value(v) if isinstance(v, (list, dict)) else v}")
    lines.append(f"verdict: {verdict}")
    if elapsed is not None:
        lines.append(f"elapsed: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


# --- commands ----------------------------------------------------------------
# each returns (report, domain, exit status)


def _load(args) -> docmod.InstanceDocument:
    if args.fixture:
        return docmod.load_fixture(args.fixture)
    if args.input and args.input != "-":
        return docmod.load(args.input)
    return docmod.parse(sys.stdin.read())


def cmd_verify(args):
    doc = _load(args)
    report = is_h_matroid(doc.family(args.family), doc.h_spec(args.h))
    report.data.update(family=args.family, h=args.h)
    return report, Domain.of_ground(doc.ground), EXIT_OK if report else EXIT_FAIL


def cmd_rank(args):
    doc = _load(args)
    family = doc.family(args.family)
    rho = rank_from_family(family)
    report = Report()
    report.add("constructible", "(C)", True)
    report.data.update(family=args.family, rank_table=rho)
    return report, Domain.of_ground(doc.ground), EXIT_OK


def cmd_construct(args):
    doc = _load(args)
    report = theorem_roundtrip(doc.rank(args.rank), doc.h_spec(args.h))
    report.data = {"rank": args.rank, "h": args.h, **report.data}
    return report, Domain.of_ground(doc.ground), EXIT_OK if report else EXIT_FAIL


def cmd_simplicialize(args):
    doc = _load(args)
    family = doc.family(args.family)
    closure = downward_closure(family)
    report = Report()
    report.add("closure-simplicial", "simplicial", is_simplicial(closure))
    same_max = maximal_members(closure) == maximal_members(family)
    report.add("max-preserved", "Max", same_max, {"Max": list(maximal_members(family).members)})
    if is_constructible(family):
        diff = first_difference(rank_from_family(family), rank_from_family(closure))
        report.add("rank-preserved", "rank", diff is None, {"X": diff})
    report.data.update(source=args.family, family=closure)
    return report, Domain.of_ground(doc.ground), EXIT_OK if report else EXIT_FAIL


def cmd_check(args):
    budget = EnumerationBudget(max_n=args.n, sample_count=args.samples, seed=args.seed)
    if args.predicate not in PREDICATES:
        raise UnknownPredicate(
            f"unknown predicate {args.predicate!r}; known: {', '.join(PREDICATES)}"
        )
    predicate = PREDICATES[args.predicate]
    found = find_counterexample(args.predicate, budget)
    report = Report()
    report.data.update(
        predicate=args.predicate,
        description=predicate.description,
        n=args.n,
        seed=args.seed,
        samples=args.samples,
    )
    if found is None:
        report.add(args.predicate, predicate.anchor, True)
        report.data["result"] = "no counterexample"
        return report, Domain.of_ground(GroundSet.of_size(args.n)), EXIT_OK
    report.add(args.predicate, predicate.anchor, Check(False, {"n": found.n, **found.witness}))
    report.data["result"] = "counterexample"
    status = EXIT_FIXTURE if predicate.negated else EXIT_FAIL
    return report, Domain.of_ground(GroundSet.of_size(found.n)), status


def cmd_submodular(args):
    if not (args.h or args.prop_check or args.vector):
        raise _UsageError("submodular needs at least one of --h, --prop-check, --vector")
    doc = _load(args)
    f = doc.function(args.function)
    report = Report()
    report.data["function"] = args.function
    if args.h:
        report.add("h-submodular", "(S)", is_h_submodular(f, doc.h_spec(args.h)))
        report.data["h"] = args.h
    if args.prop_check:
        equivalence = equivalence_check_prop(f, args.prop_check)
        report.extend(equivalence)
        data = dict(equivalence.data)
        if "failing_h" in data:
            data["failing_h"] = SetFamily(f.ground, tuple(data["failing_h"]))
        report.data["prop_check"] = data
    if args.vector:
        x = doc.vector(args.vector)
        report.add("in-P(f)", "P(f)", in_submodular_polyhedron(x, f))
        report.add("in-B(f)", "B(f)", in_base_polyhedron(x, f))
        report.data["vector"] = args.vector
    return report, Domain.of_ground(doc.ground), EXIT_OK if report else EXIT_FAIL


def cmd_poset(args):
    doc = _load(args)
    entry = doc.poset(args.poset)
    family = doc.poset_subset(entry, args.family)
    h = doc.poset_subset(entry, args.h)
    report = is_h_supermatroid(entry.poset, family, h)
    report.data.update(poset=args.poset, family=args.family, h=args.h)
    if entry.boolean:
        domain = Domain(doc.ground.names, lambda e: doc.ground.labels[e], doc.ground)
    else:
        names = entry.poset.names
        domain = Domain(names.__getitem__, names.__getitem__, None)
    return report, domain, EXIT_OK if report else EXIT_FAIL


class _UsageError(Exception):
    pass


COMMANDS = {
    "verify": cmd_verify,
    "rank": cmd_rank,
    "construct": cmd_construct,
    "simplicialize": cmd_simplicialize,
    "check": cmd_check,
    "submodular": cmd_submodular,
    "poset": cmd_poset,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--emit", choices=["text", "table", "json"], default=S,
                        help="output format; 'table' is an alias of 'text'")
    common.add_argument("--input", default=S, help="instance document (default: standard input)")
    common.add_argument("--fixture", default=S, help="use a bundled document instead of --input")
    common.add_argument("--timing", action="store_true", default=S, help="include elapsed time")
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--samples", type=int, default=S)
    common.add_argument("--n", type=int, default=S)

    parser = _Parser(prog="hmat", description="Verify H-matroids and related set-function properties.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check (C), (I), (M) for a family and H")
    p.add_argument("--family", required=True)
    p.add_argument("--h", required=True)

    p = sub.add_parser("rank", parents=[common], help="print the rank table of a constructible family")
    p.add_argument("--family", required=True)

    p = sub.add_parser("construct", parents=[common], help="build the independence family of a rank table")
    p.add_argument("--rank", required=True)
    p.add_argument("--h", required=True)

    p = sub.add_parser("simplicialize", parents=[common], help="downward closure of a family")
    p.add_argument("--family", required=True)

    p = sub.add_parser("check", parents=[common], help="exhaustive or sampled counterexample search")
    p.add_argument("--predicate", required=True, help=", ".join(PREDICATES))

    p = sub.add_parser("submodular", parents=[common], help="H-submodularity, polymatroid and P(f)/B(f) checks")
    p.add_argument("--function", required=True)
    p.add_argument("--h")
    p.add_argument("--prop-check", choices=["exhaustive", "witness"])
    p.add_argument("--vector")

    p = sub.add_parser("poset", parents=[common], help="H-supermatroid check on a poset")
    p.add_argument("--poset", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--h", required=True)
    return parser


_DEFAULTS = {"emit": "text", "input": None, "fixture": None, "timing": False, "seed": 0, "samples": 1000, "n": 3}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)

    command = " ".join(["hmat", *argv])
    start = time.perf_counter()
    try:
        report, domain, status = COMMANDS[args.command](args)
    except (_UsageError, UnknownPredicate) as exc:
        print(f"hmat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HMatError as exc:
        print(f"hmat: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start if args.timing else None
    sys.stdout.write(render(command, report, domain, "json" if args.emit == "json" else "text", elapsed))
    return status


if __name__ == "__main__":
    sys.exit(main())
