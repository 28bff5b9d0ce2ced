"""Command-line entry point.

Exit codes: 0 success, 1 infeasible matching or broken ratio bound,
2 parse error, 3 invalid flags or configuration, 4 oracle size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from carpool.bench import SOLVERS, rows_to_csv, run_bench
from carpool.core import Matching, arcs_weight, matching_weight, validate_matching
from carpool.fixed import roles_from_drivers, solve_fixed
from carpool.generate import GenConfig, generate_instance
from carpool.io import (
    ParseError,
    ReportError,
    format_weight,
    matching_report,
    parse_instance,
    parse_matching_json,
    to_dot,
    write_instance,
)
from carpool.local_search import solve_local_search
from carpool.oracle import LimitExceeded, exact_optimum
from carpool.supermatching import matching_from_super, solve_super_matching

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_LIMIT = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return parse_instance(text)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from None
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _driver_ids(inst, spec: str) -> set[int]:
    index = inst.label_index()
    out = set()
    for token in filter(None, (t.strip() for t in spec.split(","))):
        try:
            label = int(token)
        except ValueError:
            raise CliError(f"bad driver label {token!r}", EXIT_FLAGS) from None
        if label not in index:
            raise CliError(f"unknown driver label {label}", EXIT_FLAGS)
        out.add(index[label])
    return out


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args.input)
    if args.algorithm == "fixed" and args.drivers is None:
        raise CliError("--drivers is required with --algorithm fixed", EXIT_FLAGS)
    if args.algorithm != "fixed" and args.drivers is not None:
        raise CliError("--drivers only applies to --algorithm fixed", EXIT_FLAGS)
    if args.emit_super and args.algorithm != "approx3":
        raise CliError("--emit-super only applies to --algorithm approx3", EXIT_FLAGS)
    if args.algorithm == "local" and not args.ignore_weights and len({a.weight for a in inst.arcs}) > 1:
        raise CliError("local search needs uniform weights (pass --ignore-weights)", EXIT_FLAGS)

    extra = {}
    if args.algorithm == "fixed":
        m = solve_fixed(inst, roles_from_drivers(inst.n, _driver_ids(inst, args.drivers)))
    elif args.algorithm == "exact":
        try:
            m = exact_optimum(inst).best_matching
        except LimitExceeded as exc:
            raise CliError(str(exc), EXIT_LIMIT) from None
    elif args.algorithm == "local":
        m = solve_local_search(inst)
    else:
        sm = solve_super_matching(inst)
        m = matching_from_super(inst, sm)
        if args.emit_super:
            lab = inst.labels
            extra["super"] = {
                "arcs": sorted([lab[inst.arcs[i].tail], lab[inst.arcs[i].head]] for i in sm.arcs),
                "weight": format_weight(arcs_weight(inst, sm.arcs)),
            }
    report = matching_report(inst, m)
    report.update(extra)
    print(json.dumps(report, separators=(",", ":")))
    if args.dot:
        Path(args.dot).write_text(to_dot(inst, m), encoding="utf-8")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load(args.input)
    try:
        text = Path(args.matching).read_text(encoding="utf-8")
        m, claimed = parse_matching_json(inst, text)
    except OSError as exc:
        raise CliError(f"cannot read {args.matching}: {exc}", EXIT_PARSE) from None
    except ReportError as exc:
        raise CliError(f"{args.matching}: {exc}", EXIT_PARSE) from None

    problems = [v.describe(inst) for v in validate_matching(inst, m)]
    weight = format_weight(matching_weight(inst, m))
    if claimed is not None and claimed != weight:
        problems.append(f"WeightMismatch reported={claimed} actual={weight}")
    for line in problems:
        print(line)
    print(f"{'feasible' if not problems else 'infeasible'} weight={weight}")
    return EXIT_OK if not problems else EXIT_INFEASIBLE


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(
        n=args.n,
        m=args.m,
        max_capacity=args.max_capacity,
        min_weight=args.min_weight,
        max_weight=args.max_weight,
        seed=args.seed,
        unweighted=args.unweighted,
    )
    try:
        inst = generate_instance(cfg)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_FLAGS) from None
    sys.stdout.write(write_instance(inst))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    unknown = [a for a in algorithms if a not in SOLVERS]
    if unknown:
        raise CliError(f"unknown algorithms for bench: {unknown}", EXIT_FLAGS)
    directory = Path(args.directory)
    if not directory.is_dir():
        raise CliError(f"{directory} is not a directory", EXIT_FLAGS)
    rows, failures = run_bench(directory, algorithms, args.with_oracle)
    text = rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for f in failures:
        print(f"ratio bound violated: {f}", file=sys.stderr)
    return EXIT_INFEASIBLE if failures else EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    inst = _load(args.input)
    m: Matching | None = None
    if args.matching:
        try:
            m, _ = parse_matching_json(inst, Path(args.matching).read_text(encoding="utf-8"))
        except (OSError, ReportError) as exc:
            raise CliError(f"{args.matching}: {exc}", EXIT_PARSE) from None
    sys.stdout.write(to_dot(inst, m))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_FLAGS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="carpool", description="Maximum carpool matching solvers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance and print a JSON report")
    p.add_argument("input", help="instance file ('-' for stdin)")
    p.add_argument("--algorithm", required=True, choices=["exact", "fixed", "local", "approx3"])
    p.add_argument("--drivers", help="comma-separated driver labels (fixed only)")
    p.add_argument("--ignore-weights", action="store_true", help="allow local search on weighted input")
    p.add_argument("--emit-super", action="store_true", help="include the super-matching (approx3)")
    p.add_argument("--dot", help="also write a Graphviz rendering to this path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a JSON matching report against an instance")
    p.add_argument("input")
    p.add_argument("matching")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a seeded random instance to stdout")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-capacity", type=int, default=3)
    p.add_argument("--min-weight", type=int, default=1)
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run solvers over a directory and write CSV")
    p.add_argument("directory")
    p.add_argument("--algorithms", default="local,approx3")
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--csv", help="output path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dot", help="render an instance (and optional matching) as DOT")
    p.add_argument("input")
    p.add_argument("--matching")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"carpool: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
