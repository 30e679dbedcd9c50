"""Command-line entry point: ``regip solve | bench | compare``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import MissingSolver, UnknownProblem, UnknownSolver
from .harness import (
    DEFAULT_BUCKETS,
    SOLVERS,
    compare_table,
    read_bench,
    render_compare,
    run_bench,
    run_solver,
    write_bench,
)
from .outer import DEFAULT_TOLERANCES, Status
from .problems import get_problem

EXIT_OPTIMAL, EXIT_FAILURE, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with "Infeasible"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text):
    return [float(t) for t in str(text).split(",") if t.strip()]


def _names(text):
    return [t.strip() for t in str(text).split(",") if t.strip()]


def read_config(path) -> dict:
    """Parse ``key=value`` lines; keys use the flag names, ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="regip", description="Regularized interior point solver and benchmark harness")
    ap.add_argument("--config", help="file of key=value defaults (same names as the flags)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one suite problem and print a JSON report")
    s.add_argument("--problem", required=True)
    s.add_argument("--solver", default="regip")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--json", help="also write the report to this path")

    b = sub.add_parser("bench", help="run the suite for several solvers and tolerances")
    b.add_argument("--solvers", type=_names, default=list(SOLVERS))
    b.add_argument("--tols", type=_floats, default=list(DEFAULT_TOLERANCES))
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--time-limit", type=float, default=60.0)
    b.add_argument("--problems", type=_names, default=None, help="comma-separated subset of the suite")
    b.add_argument("--out", required=True)

    c = sub.add_parser("compare", help="W/T+/T-/L table of two solvers from a bench directory")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--in", dest="in_dir", required=True)
    c.add_argument("--buckets", type=lambda t: [int(v) for v in _floats(t)], default=list(DEFAULT_BUCKETS))
    return ap


def _apply_config(ap, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for action in ap._subparsers._group_actions:
        for subparser in action.choices.values():
            dests = {a.dest: a for a in subparser._actions}
            for key, value in values.items():
                if key in dests:
                    a = dests[key]
                    subparser.set_defaults(**{key: a.type(value) if a.type else value})
                    a.required = False


def _cmd_solve(args) -> int:
    record = get_problem(args.problem)
    if args.solver not in SOLVERS:
        raise UnknownSolver(args.solver)
    report = run_solver(args.solver, record, args.tol, args.time_limit)
    text = json.dumps(report.to_dict(), indent=1)
    print(text)
    if args.json:
        Path(args.json).write_text(text + "\n")
    if report.status is Status.OPTIMAL:
        return EXIT_OPTIMAL
    if report.status is Status.INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_FAILURE


def _cmd_bench(args) -> int:
    result = run_bench(args.solvers, args.tols, args.time_limit, args.jobs, args.problems)
    out = write_bench(result, args.out)
    for s in args.solvers:
        counts = ", ".join(f"eps={e:.0e}: {result.solved_count(s, e)}" for e in args.tols)
        print(f"{s:6s} solved {counts}")
    if result.failures:
        print(f"{len(result.failures)} run(s) raised; see {out / 'failures.json'}", file=sys.stderr)
    print(f"results written to {out}")
    return EXIT_OPTIMAL


def _cmd_compare(args) -> int:
    rows = read_bench(args.in_dir)
    cells = compare_table(rows, args.a, args.b, args.buckets)
    print(render_compare(cells, args.a, args.b))
    return EXIT_OPTIMAL


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_config(ap, argv)
    except (OSError, ValueError) as exc:
        print(f"regip: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = ap.parse_args(argv)
    handler = {"solve": _cmd_solve, "bench": _cmd_bench, "compare": _cmd_compare}[args.command]
    try:
        return handler(args)
    except (UnknownProblem, UnknownSolver, MissingSolver) as exc:
        print(f"regip: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
