"""Command-line front end.

Exit codes: 0 when the queried property holds, 1 when it fails (the output
then names a witness), 2 for input or usage errors, 3 when ``--verify``
catches an oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ._parallel import JOBS_ENV, default_jobs
from .conditions import path_deviance, roundaboutness, three_point_condition
from .formats import FORMATS, InputError, graph_to_json, parse_input, serialize, to_dot
from .geodesic import basic_geodesic_graph, complete_graph, path_order
from .metric_core import FiniteMetricSpace, MetricError, check_tie_breaking, rational_string, validate_metric
from .oracle import KINDS, GenerationError, GeneratorSpec, generate
from .recognition import mst, recognize_path
from .report import analyze, invalid_report

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv",
                        help="matrix format (input; output for generate)")
    common.add_argument("--jobs", type=_positive_int, default=None,
                        help=f"scan workers (default ${JOBS_ENV} or 1)")

    reader = argparse.ArgumentParser(add_help=False, parents=[common])
    reader.add_argument("input", nargs="?", default="-", help="matrix file, '-' for stdin (default)")

    graph_out = argparse.ArgumentParser(add_help=False)
    graph_out.add_argument("--out", choices=("json", "dot"), default="json")

    parser = argparse.ArgumentParser(
        prog="treelike",
        description="Decide whether a finite metric is realised by a spanning tree of its points.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("validate", parents=[reader], help="check the metric axioms")
    an = sub.add_parser("analyze", parents=[reader], help="full JSON report")
    an.add_argument("--verify", action="store_true",
                    help="cross-check with brute-force oracles within their size caps")
    an.add_argument("--timings", action="store_true", help="add per-phase timings (ms)")
    an.add_argument("--out", choices=("json",), default="json")
    sub.add_parser("mst", parents=[reader, graph_out], help="minimum spanning tree of K_M")
    sub.add_parser("basic-graph", parents=[reader, graph_out], help="basic geodesic graph G_M")
    sub.add_parser("roundabout", parents=[reader], help="rho and path deviance")
    sub.add_parser("path-check", parents=[reader], help="spanning path recognition")
    gen = sub.add_parser("generate", parents=[common], help="write a seeded random metric")
    gen.add_argument("--kind", choices=KINDS, default="tree")
    gen.add_argument("-n", type=_positive_int, default=8)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dim", type=_positive_int, default=2)
    gen.add_argument("-o", "--output", default="-", help="destination file ('-' for stdout)")
    return parser


def _emit(doc) -> None:
    if isinstance(doc, str):
        sys.stdout.write(doc if doc.endswith("\n") else doc + "\n")
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _load(args) -> tuple[Optional[FiniteMetricSpace], list[str], Optional[MetricError]]:
    matrix, labels = parse_input(args.input, args.format)
    try:
        return validate_metric(matrix, labels), labels, None
    except MetricError as exc:
        return None, labels, exc


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(kind=args.kind, n=args.n, seed=args.seed, dim=args.dim)
    M, _ = generate(spec)
    text = serialize(M, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_HOLDS


def _run(args) -> int:
    if args.command == "generate":
        return _cmd_generate(args)

    M, labels, error = _load(args)
    if error is not None:
        doc = invalid_report(labels, error.violation)
        _emit(doc.to_json())
        return EXIT_FAILS if args.command == "validate" else EXIT_USAGE

    if args.command == "validate":
        _emit({"metric_valid": True, "n": M.n, "labels": list(M.labels)})
        return EXIT_HOLDS

    if args.command == "analyze":
        doc = analyze(M, jobs=args.jobs, verify=args.verify, timings=args.timings)
        _emit(doc.to_json())
        if doc.verification is not None and not doc.verification["ok"]:
            print("oracle verification failed", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_HOLDS if doc.is_spanning_tree_metric else EXIT_FAILS

    if args.command == "mst":
        tree, unique = mst(complete_graph(M))
        if args.out == "dot":
            _emit(to_dot(tree))
        else:
            tie = check_tie_breaking(M, limit=1)
            _emit({
                **graph_to_json(tree),
                "unique_certified": unique,
                "tied_pairs": [[[M.labels[i] for i in p] for p in pair] for pair in tie.colliding_pairs],
            })
        return EXIT_HOLDS if unique else EXIT_FAILS

    if args.command == "basic-graph":
        G = basic_geodesic_graph(M)
        is_tree = len(G.edges) == M.n - 1
        if args.out == "dot":
            _emit(to_dot(G))
        else:
            _emit({**graph_to_json(G), "is_tree": is_tree})
        return EXIT_HOLDS if is_tree else EXIT_FAILS

    if args.command == "roundabout":
        if M.n < 2:
            raise InputError("roundaboutness needs at least two points")
        rho = roundaboutness(M, args.jobs)
        dev = path_deviance(M, args.jobs)
        names = M.labels
        _emit({
            "rho": {"exact": rational_string(rho.rho), "decimal": rho.decimal,
                    "argmax_triplet": [names[i] for i in rho.argmax_triplet]},
            "path_deviance": {"exact": rational_string(dev.value), "decimal": dev.decimal,
                              "argmax_triplet": [names[i] for i in dev.argmax_triplet]},
            "path_deviance_normalized": True,
            "tie_breaking": check_tie_breaking(M, limit=1).holds,
        })
        return EXIT_HOLDS if rho.rho == 0 else EXIT_FAILS

    if args.command == "path-check":
        path = recognize_path(M)
        three = three_point_condition(M)
        names = M.labels
        doc = {
            "is_spanning_path_metric": path is not None,
            "three_point": three.holds,
            "witness": None if three.witness is None else [names[i] for i in three.witness],
            "path": None if path is None else [names[i] for i in path_order(path)],
        }
        if path is not None:
            doc["edges"] = graph_to_json(path)["edges"]
        _emit(doc)
        return EXIT_HOLDS if path is not None else EXIT_FAILS

    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        return _run(args)
    except (InputError, ValueError, OSError, GenerationError) as exc:
        print(f"treelike: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
