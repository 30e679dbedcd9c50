"""Benchmark sweeps and pairwise robustness tables."""
from __future__ import annotations

import csv
import json
import math
import os
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .baselines import BaselineConfig, bcl_solve, plain_ip_solve
from .errors import MissingSolver, UnknownSolver
from .outer import DEFAULT_TOLERANCES, RegipConfig, SolveReport, Status, regip_solve
from .problems import ProblemRecord, get_problem, list_problems

SOLVERS = ("regip", "ip", "bcl")
DEFAULT_BUCKETS = (10, 100, 1000)
SEED_ENV = "REGIP_SEED"


def seed_from_env(default: int = 0) -> int:
    """Seed for pseudo-random instances, taken from ``REGIP_SEED`` when set."""
    raw = os.environ.get(SEED_ENV, "")
    return int(raw) if raw.strip() else default


def run_solver(solver: str, record: ProblemRecord, eps: float, time_limit: float = 60.0) -> SolveReport:
    if not eps > 0:
        raise ValueError("eps must be positive")
    if solver == "regip":
        return regip_solve(record.problem, RegipConfig(eps=eps, time_limit=time_limit))
    if solver == "ip":
        return plain_ip_solve(record.problem, BaselineConfig(eps=eps, time_limit=time_limit))
    if solver == "bcl":
        return bcl_solve(record.problem, BaselineConfig(eps=eps, time_limit=time_limit))
    raise UnknownSolver(solver)


def is_success(status: str, record: ProblemRecord) -> bool:
    """Optimal always counts; Infeasible counts only on instances known to be infeasible."""
    if status == Status.OPTIMAL.value:
        return True
    return status == Status.INFEASIBLE.value and "infeasible" in record.tags


@dataclass(frozen=True)
class BenchRow:
    problem: str
    solver: str
    eps: float
    n: int
    m: int
    status: str
    success: bool
    f: float
    stationarity: float
    feasibility: float
    complementarity: float
    outer_iterations: int
    inner_iterations: int
    wall_seconds: float
    error: str = ""

    @property
    def size(self) -> int:
        return max(self.n, self.m)

    @property
    def key(self):
        return (self.problem, self.solver, self.eps)


def _bench_one(task) -> tuple[BenchRow, Optional[dict]]:
    name, solver, eps, time_limit = task
    record = get_problem(name)
    n, m = record.problem.n, record.problem.m
    try:
        rep = run_solver(solver, record, eps, time_limit)
    except Exception as exc:  # isolate the sweep from any single run
        nan = float("nan")
        row = BenchRow(name, solver, eps, n, m, Status.SUBSOLVER_FAILURE.value, False, nan, nan, nan, nan, 0, 0, 0.0,
                       error=f"{type(exc).__name__}: {exc}")
        return row, {"problem": name, "solver": solver, "eps": eps, "error": row.error,
                     "traceback": traceback.format_exc()}
    r = rep.residuals
    row = BenchRow(
        problem=name, solver=solver, eps=eps, n=n, m=m, status=rep.status.value,
        success=is_success(rep.status.value, record), f=rep.f,
        stationarity=r.stationarity, feasibility=r.primal_feasibility, complementarity=r.complementarity,
        outer_iterations=rep.outer_iterations, inner_iterations=rep.inner_iterations,
        wall_seconds=rep.wall_seconds,
    )
    return row, None


@dataclass
class BenchResult:
    rows: list
    failures: list

    def solved_count(self, solver: str, eps: float) -> int:
        return sum(r.success for r in self.rows if r.solver == solver and r.eps == eps)


def run_bench(
    solvers: Sequence[str],
    tols: Sequence[float] = DEFAULT_TOLERANCES,
    time_limit: float = 60.0,
    jobs: int = 1,
    problems: Optional[Iterable[str]] = None,
) -> BenchResult:
    """Run every (problem, solver, eps) combination; rows come back sorted by that key."""
    solvers, tols = list(solvers), [float(t) for t in tols]
    if not solvers or not tols:
        raise ValueError("need at least one solver and one tolerance")
    for s in solvers:
        if s not in SOLVERS:
            raise UnknownSolver(s)
    names = sorted(problems) if problems is not None else list_problems()
    for name in names:
        get_problem(name)
    tasks = [(p, s, e, time_limit) for p in names for s in solvers for e in tols]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_bench_one, tasks))
    else:
        out = [_bench_one(t) for t in tasks]
    rows = sorted((row for row, _ in out), key=lambda r: r.key)
    failures = sorted((f for _, f in out if f is not None), key=lambda f: (f["problem"], f["solver"], f["eps"]))
    return BenchResult(rows=rows, failures=failures)


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

CSV_NAME, JSON_NAME, FAILURES_NAME = "results.csv", "results.json", "failures.json"
_FIELDS = [f.name for f in fields(BenchRow)]


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_bench(result: BenchResult, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / CSV_NAME, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(_FIELDS)
        for row in result.rows:
            w.writerow([_fmt(getattr(row, k)) for k in _FIELDS])
    payload = {
        "schema": 1,
        "rows": [{k: (v if not isinstance(v, float) or math.isfinite(v) else None) for k, v in asdict(r).items()}
                 for r in result.rows],
    }
    (out / JSON_NAME).write_text(json.dumps(payload, indent=1))
    (out / FAILURES_NAME).write_text(json.dumps(result.failures, indent=1))
    return out


def read_bench(in_dir) -> list[BenchRow]:
    data = json.loads((Path(in_dir) / JSON_NAME).read_text())
    rows = []
    for d in data["rows"]:
        d = {k: (float("nan") if v is None else v) for k, v in d.items()}
        rows.append(BenchRow(**d))
    return rows


# ---------------------------------------------------------------------------
# pairwise comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompareCell:
    W: int = 0
    T_plus: int = 0
    T_minus: int = 0
    L: int = 0

    @property
    def total(self) -> int:
        return self.W + self.T_plus + self.T_minus + self.L

    def render(self) -> str:
        return f"{self.W} & {self.T_plus}+/{self.T_minus}- & {self.L}"


def bucket_labels(edges: Sequence[int]) -> list[str]:
    labels, lo = [], 0
    for hi in edges:
        labels.append(f"{lo}-{hi}")
        lo = hi + 1
    labels.append(f">{edges[-1]}")
    return labels


def bucket_of(size: int, edges: Sequence[int]) -> str:
    labels = bucket_labels(edges)
    for label, hi in zip(labels, edges):
        if size <= hi:
            return label
    return labels[-1]


def compare_table(rows: Sequence[BenchRow], solver_a: str, solver_b: str, edges: Sequence[int] = DEFAULT_BUCKETS):
    """W/T+/T-/L counts of ``solver_a`` against ``solver_b`` per (size bucket, eps)."""
    edges = sorted(int(e) for e in edges)
    if not edges:
        raise ValueError("need at least one bucket edge")
    present = {r.solver for r in rows}
    for s in (solver_a, solver_b):
        if s not in present:
            raise MissingSolver(s)
    outcome = {(r.problem, r.solver, r.eps): r for r in rows}
    tols = sorted({r.eps for r in rows}, reverse=True)
    problems = sorted({r.problem for r in rows})
    cells = {(b, e): [0, 0, 0, 0] for b in bucket_labels(edges) for e in tols}
    for e in tols:
        for p in problems:
            ra, rb = outcome.get((p, solver_a, e)), outcome.get((p, solver_b, e))
            if ra is None or rb is None:
                continue
            a, b = ra.success, rb.success
            idx = 0 if a and not b else 1 if a and b else 2 if not a and not b else 3
            cells[(bucket_of(ra.size, edges), e)][idx] += 1
    return {k: CompareCell(*v) for k, v in cells.items()}


def render_compare(cells, solver_a: str, solver_b: str) -> str:
    buckets = list(dict.fromkeys(b for b, _ in cells))
    tols = list(dict.fromkeys(e for _, e in cells))
    head = [f"{solver_a} vs {solver_b}", "size n, m"] + [f"eps={e:.0e}: W & T+/T- & L" for e in tols]
    lines = [head[0], "  ".join(f"{h:<28}" if i else f"{h:<12}" for i, h in enumerate(head[1:]))]
    for b in buckets:
        cols = [f"{b:<12}"] + [f"{cells[(b, e)].render():<28}" for e in tols]
        lines.append("  ".join(cols).rstrip())
    return "\n".join(lines)
