"""Command-line interface: ``bimorph <command> [flags]``.

JSON goes to stdout, logs to stderr.  Exit codes: 0 success, 1 usage
error, 2 inconclusive or exhausted, 3 internal cross-check violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from typing import Optional, Sequence

from . import naturals
from .classifier import INCONCLUSIVE, ClassifyParams, CrossCheckViolation, classify
from .extension import ExtensionExhausted, SearchBudget, clique_force, extend_to_partial_bimorphism
from .finite_lab import census
from .graph_core import SpecError, induced_subgraph, make_oracle, to_dot
from .invariants import (
    check_therefore_property,
    check_triangle_property,
    independence_number_bounded,
    star_number_bounded,
)
from .morphism import LocalMorphism, MorphismKind, classify_map

log = logging.getLogger("bimorph")

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_CROSS_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(horizon=args.horizon, scan_limit=args.scan_limit)


def _vertex_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None
    if any(v < 0 for v in out) or len(set(out)) != len(out):
        raise UsageError("vertex list must hold distinct non-negative integers")
    return out


def cmd_gen(args) -> int:
    graph = make_oracle(args.spec)
    if args.dot:
        sys.stdout.write(to_dot(graph, args.n))
        return EXIT_OK
    fg, _ = induced_subgraph(graph, range(args.n))
    _emit({"spec": graph.spec, "n": args.n, "edges": sorted(map(list, fg.edges))})
    return EXIT_OK


def cmd_check(args) -> int:
    graph = make_oracle(args.spec)
    budget = _budget(args)
    if args.prop in ("triangle", "therefore"):
        check = check_triangle_property if args.prop == "triangle" else check_therefore_property
        verdict = check(graph, args.size_max, args.trials, budget, seed=args.seed)
        _emit({"spec": graph.spec, "prop": args.prop, **verdict.to_json()})
        return EXIT_OK if verdict.witnessed else EXIT_INCONCLUSIVE
    limit = args.limit
    inv = (star_number_bounded if args.prop == "sigma" else independence_number_bounded)(
        graph, limit, args.invariant_horizon
    )
    _emit({"spec": graph.spec, "prop": args.prop, **inv.to_json()})
    return EXIT_OK


def cmd_extend(args) -> int:
    graph = make_oracle(args.spec)
    try:
        raw = json.loads(args.map)
        f = LocalMorphism(graph, graph,
                          [naturals.from_json(v) for v in raw["dom"]],
                          [naturals.from_json(v) for v in raw["img"]])
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad --map: {exc}") from None
    if classify_map(f) < MorphismKind.MONOMORPHISM:
        raise UsageError("--map must be a monomorphism of the graph")
    try:
        p = extend_to_partial_bimorphism(graph, f, args.depth, _budget(args))
    except ExtensionExhausted as exc:
        _emit({"spec": graph.spec, "status": "exhausted", "reason": str(exc),
               "trace": exc.partial.trace_json() if exc.partial else []})
        return EXIT_INCONCLUSIVE
    _emit({"spec": graph.spec, "status": "ok", "valid": p.is_valid(), "trace": p.trace_json()})
    return EXIT_OK


def cmd_clique_force(args) -> int:
    graph = make_oracle(args.spec)
    xs = _vertex_list(args.set)
    try:
        stages, final = clique_force(graph, xs, _budget(args))
    except ExtensionExhausted as exc:
        _emit({"spec": graph.spec, "status": "exhausted", "stage": exc.stage, "reason": str(exc)})
        return EXIT_INCONCLUSIVE
    _emit({
        "spec": graph.spec,
        "status": "ok",
        "set": xs,
        "stages": [
            {"pairs": [[naturals.to_json(u), naturals.to_json(w)] for u, w in s.pairs],
             "trace": s.trace_json()}
            for s in stages
        ],
        "final": [naturals.to_json(v) for v in final],
    })
    return EXIT_OK


def cmd_classify(args) -> int:
    graph = make_oracle(args.spec)
    params = ClassifyParams(depth=args.depth, budget=_budget(args), seed=args.seed)
    try:
        report = classify(graph, params)
    except CrossCheckViolation as exc:
        _emit(exc.report.to_json())
        log.error("%s", exc)
        return EXIT_CROSS_CHECK
    _emit(report.to_json())
    return EXIT_INCONCLUSIVE if report.branch == INCONCLUSIVE else EXIT_OK


def cmd_census(args) -> int:
    rows = census(args.max_order)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["graph_id", "X", "Y", "verdict"])
        writer.writerows((r.graph_id, r.x, r.y, r.verdict) for r in rows)
    else:
        _emit([{"graph_id": r.graph_id, "X": r.x, "Y": r.y, "verdict": r.verdict} for r in rows])
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bimorph", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for all sampling (default 0)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_budget(p):
        p.add_argument("--horizon", type=int, default=None, help="only consider vertices below this")
        p.add_argument("--scan-limit", type=int, default=1 << 16, help="candidates examined per search")

    p = sub.add_parser("gen", help="print an induced prefix of a graph")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("check", help="bounded invariant or cone-property check")
    p.add_argument("--spec", required=True)
    p.add_argument("--prop", required=True, choices=["triangle", "therefore", "sigma", "alpha"])
    p.add_argument("--size-max", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--limit", type=int, default=5, help="cap for sigma / alpha")
    p.add_argument("--invariant-horizon", type=int, default=32)
    with_budget(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("extend", help="extend a local monomorphism to a partial bimorphism")
    p.add_argument("--spec", required=True)
    p.add_argument("--map", required=True, help='JSON such as {"dom":[0],"img":[1]}')
    p.add_argument("--depth", type=int, required=True)
    with_budget(p)
    p.set_defaults(run=cmd_extend)

    p = sub.add_parser("clique-force", help="force a vertex set onto a clique")
    p.add_argument("--spec", required=True)
    p.add_argument("--set", required=True, help="comma-separated vertices")
    with_budget(p)
    p.set_defaults(run=cmd_clique_force)

    p = sub.add_parser("classify", help="gather MB / UH evidence")
    p.add_argument("--spec", required=True)
    p.add_argument("--depth", type=int, default=ClassifyParams.depth)
    with_budget(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("census", help="finite XY-homogeneity census")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(run=cmd_census)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(levelname)s %(message)s")
        for name in ("n", "depth", "max_order", "horizon", "scan_limit", "size_max", "trials", "limit"):
            value = getattr(args, name, None)
            if value is not None and value < (0 if name in ("n", "depth") else 1):
                raise UsageError(f"--{name.replace('_', '-')} is out of range")
        log.info("running %s", args.command)
        return args.run(args)
    except (UsageError, SpecError, ValueError) as exc:
        print(f"bimorph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
