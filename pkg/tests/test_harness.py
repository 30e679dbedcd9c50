import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from regip import harness
from regip.errors import MissingSolver, UnknownProblem, UnknownSolver
from regip.harness import (
    BenchRow,
    CompareCell,
    bucket_labels,
    bucket_of,
    compare_table,
    read_bench,
    render_compare,
    run_bench,
    seed_from_env,
    write_bench,
)

SUBSET = ["DEGEN1", "INFEAS1", "QP1"]


def row(problem, solver, eps, success, n=2, m=1):
    status = "Optimal" if success else "MaxOuter"
    return BenchRow(problem, solver, eps, n, m, status, success, 0.0, 0.0, 0.0, 0.0, 1, 1, 0.0)


def test_cell_render():
    assert CompareCell(6, 18, 1, 1).render() == "6 & 18+/1- & 1"
    assert CompareCell(1, 2, 3, 4).total == 10


def test_buckets():
    assert bucket_labels([10, 100, 1000]) == ["0-10", "11-100", "101-1000", ">1000"]
    assert bucket_of(10, [10, 100]) == "0-10"
    assert bucket_of(11, [10, 100]) == "11-100"
    assert bucket_of(5000, [10, 100]) == ">100"


def test_compare_example():
    rows = [
        row("A", "x", 1e-3, True), row("A", "y", 1e-3, False),
        row("B", "x", 1e-3, True), row("B", "y", 1e-3, True),
        row("C", "x", 1e-3, False), row("C", "y", 1e-3, False),
        row("D", "x", 1e-3, False, n=50), row("D", "y", 1e-3, True, n=50),
    ]
    cells = compare_table(rows, "x", "y", [10, 100])
    assert cells[("0-10", 1e-3)] == CompareCell(1, 1, 1, 0)
    assert cells[("11-100", 1e-3)] == CompareCell(0, 0, 0, 1)
    assert cells[(">100", 1e-3)].total == 0


def test_missing_solver():
    with pytest.raises(MissingSolver):
        compare_table([row("A", "x", 1e-3, True)], "x", "y")


outcomes = st.lists(st.tuples(st.booleans(), st.booleans(), st.integers(1, 2000)), min_size=1, max_size=30)


@given(outcomes)
def test_compare_is_antisymmetric(data):
    rows = []
    for i, (a, b, size) in enumerate(data):
        rows += [row(f"P{i}", "x", 1e-5, a, n=size), row(f"P{i}", "y", 1e-5, b, n=size)]
    ab, ba = compare_table(rows, "x", "y"), compare_table(rows, "y", "x")
    for k in ab:
        assert (ab[k].W, ab[k].T_plus, ab[k].T_minus, ab[k].L) == (ba[k].L, ba[k].T_plus, ba[k].T_minus, ba[k].W)
    assert sum(c.total for c in ab.values()) == len(data)


def test_render_layout():
    rows = [row("A", "x", e, True) for e in (1e-3, 1e-5)] + [row("A", "y", e, False) for e in (1e-3, 1e-5)]
    text = render_compare(compare_table(rows, "x", "y"), "x", "y")
    lines = text.splitlines()
    assert lines[0] == "x vs y"
    assert "eps=1e-03" in lines[1] and "eps=1e-05" in lines[1]
    assert "1 & 0+/0- & 0" in lines[2]
    assert len(lines) == 2 + 4


def test_run_bench_validation():
    with pytest.raises(UnknownSolver):
        run_bench(["nope"], [1e-3], problems=["QP1"])
    with pytest.raises(UnknownProblem):
        run_bench(["regip"], [1e-3], problems=["NOPE"])
    with pytest.raises(ValueError):
        run_bench([], [1e-3])


@pytest.fixture(scope="module")
def small_bench():
    return run_bench(["regip", "ip"], [1e-3, 1e-5], time_limit=30, problems=SUBSET)


def _stable(rows):
    return [replace(r, wall_seconds=0.0) for r in rows]


def test_bench_cardinality_and_order(small_bench):
    assert len(small_bench.rows) == len(SUBSET) * 2 * 2
    assert [r.key for r in small_bench.rows] == sorted(r.key for r in small_bench.rows)
    assert small_bench.failures == []
    infeas = [r for r in small_bench.rows if r.problem == "INFEAS1" and r.solver == "regip"]
    assert all(r.success and r.status == "Infeasible" for r in infeas)


def test_bench_deterministic_and_parallel_equal(small_bench):
    again = run_bench(["regip", "ip"], [1e-3, 1e-5], time_limit=30, problems=SUBSET, jobs=2)
    assert _stable(again.rows) == _stable(small_bench.rows)


def test_failure_isolation(monkeypatch):
    real = harness.run_solver

    def flaky(solver, record, eps, time_limit=60.0):
        if record.name == "DEGEN1":
            raise RuntimeError("boom")
        return real(solver, record, eps, time_limit)

    monkeypatch.setattr(harness, "run_solver", flaky)
    res = run_bench(["regip"], [1e-3], problems=SUBSET)
    assert len(res.rows) == 3
    bad = [r for r in res.rows if r.problem == "DEGEN1"][0]
    assert not bad.success and "boom" in bad.error
    assert len(res.failures) == 1 and "RuntimeError" in res.failures[0]["traceback"]
    assert res.solved_count("regip", 1e-3) == 2


def test_write_read_roundtrip(small_bench, tmp_path):
    write_bench(small_bench, tmp_path)
    assert {p.name for p in tmp_path.iterdir()} == {"results.csv", "results.json", "failures.json"}
    back = read_bench(tmp_path)
    for a, b in zip(back, small_bench.rows):
        for k, v in a.__dict__.items():
            w = getattr(b, k)
            assert (isinstance(v, float) and math.isnan(v) and math.isnan(w)) or v == w
    header = (tmp_path / "results.csv").read_text().splitlines()[0]
    assert header.startswith("problem,solver,eps,n,m,status,success")


def test_seed_from_env(monkeypatch):
    monkeypatch.delenv("REGIP_SEED", raising=False)
    assert seed_from_env(7) == 7
    monkeypatch.setenv("REGIP_SEED", "123")
    assert seed_from_env(7) == 123
