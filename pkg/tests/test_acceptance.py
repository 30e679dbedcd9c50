"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import re
import time

import mpmath
import numpy as np
from hypothesis import example, given, settings, strategies as st

from regip.baselines import BaselineConfig, plain_ip_solve
from regip.harness import SOLVERS, compare_table, render_compare, run_bench, seed_from_env
from regip.kkt import inertia_corrected_factorize, solve
from regip.model import check_derivatives
from regip.outer import (
    DEFAULT_TOLERANCES,
    RegipConfig,
    Status,
    regip_solve,
    update_barrier,
    update_penalty,
    update_tolerance,
)
from regip.problems import get_problem, list_problems
from regip.stationarity import feasibility_residual

EPS = np.finfo(float).eps


def test_qp1_analytic_solution(criterion):
    p = get_problem("QP1").problem
    t0 = time.perf_counter()
    r = regip_solve(p, RegipConfig(eps=1e-8))
    wall = time.perf_counter() - t0
    ex = np.linalg.norm(r.x - [0.5, 0.5])
    ey = abs(r.y[0] + 0.5)
    ez = np.linalg.norm(r.z)
    ok = r.status is Status.OPTIMAL and ex <= 1e-6 and ey <= 1e-6 and ez <= 1e-6 and wall < 1.0
    criterion(1, ok, f"QP1 {r.status.value} |dx|={ex:.1e} |dy|={ey:.1e} |z|={ez:.1e} in {wall:.3f}s")
    assert ok


def test_degenerate_problems(criterion):
    out = {}
    for name in ("DEGEN1", "DEGEN2"):
        p = get_problem(name).problem
        a = regip_solve(p, RegipConfig(eps=1e-6, max_outer=500))
        b = plain_ip_solve(p, BaselineConfig(eps=1e-6, max_outer=500))
        out[name] = (a, b)
    regip_ok = all(a.status is Status.OPTIMAL and a.outer_iterations <= 500 for a, _ in out.values())
    ip_fails = any(b.status is not Status.OPTIMAL for _, b in out.values())
    detail = "; ".join(f"{n}: regip {a.status.value} ({a.outer_iterations} outer), ip {b.status.value}"
                       for n, (a, b) in out.items())
    criterion(2, regip_ok and ip_fails, detail)
    assert regip_ok and ip_fails


def test_infeasible_problem(criterion):
    p = get_problem("INFEAS1").problem
    r = regip_solve(p, RegipConfig(eps=1e-6))
    stat = r.infeasibility.stationarity if r.infeasibility is not None else np.inf
    ok = r.status is Status.INFEASIBLE and stat <= 1e-6 and abs(r.x[0]) <= 1e-3
    criterion(3, ok, f"INFEAS1 {r.status.value}, feasibility stationarity {stat:.1e}, x={r.x[0]:.1e}")
    assert ok


def test_sign_and_subproblem_invariants(criterion, suite_reports):
    bad = []
    count = 0
    for (name, eps), rep in suite_reports.items():
        p = get_problem(name).problem
        for rec in rep.history:
            count += 1
            if not (np.all(rec.x > 0) and np.all(rec.z <= 0)):
                bad.append(f"{name}@{eps} k={rec.k}: sign")
            if not rec.stationarity <= rec.eps_inner:
                bad.append(f"{name}@{eps} k={rec.k}: stationarity {rec.stationarity:.1e} > {rec.eps_inner:.1e}")
            # y = yhat + c/rho is computed in floating point, so the residual is rounding noise
            c = p.cons(rec.x)
            noise = 8 * EPS * (np.linalg.norm(c) + rec.rho * np.linalg.norm(rec.yhat) + rec.rho * np.linalg.norm(rec.y))
            if not rec.dual_residual <= noise:
                bad.append(f"{name}@{eps} k={rec.k}: dual residual {rec.dual_residual:.1e}")
    ok = not bad and count > 0
    criterion(4, ok, f"{count} outer iterates checked" + (f"; {bad[:3]}" if bad else ""))
    assert ok, bad


def test_complementarity(criterion, suite_reports):
    bad = []
    for (name, eps), rep in suite_reports.items():
        if rep.status is Status.OPTIMAL and not rep.residuals.complementarity <= eps:
            bad.append(f"{name}@{eps}: complementarity {rep.residuals.complementarity:.1e}")
        for rec in rep.history:
            if np.any(np.minimum(rec.x, -rec.z) > np.sqrt(rec.mu) * (1 + 4 * EPS)):
                bad.append(f"{name}@{eps} k={rec.k}: min(x, -z) above sqrt(mu)")
    optimal = sum(r.status is Status.OPTIMAL for r in suite_reports.values())
    criterion(5, not bad, f"{optimal} optimal runs" + (f"; {bad[:3]}" if bad else ""))
    assert not bad, bad


def _full_newton_oracle(Hs, J, rho, grad, c, lam, y, yhat):
    """Solve the unreduced (dx, dlam, dy) Newton system in 50-digit arithmetic."""
    n, m = J.shape[1], J.shape[0]
    N = n + 2 * m
    K = mpmath.zeros(N, N)
    rhs = mpmath.zeros(N, 1)
    for i in range(n):
        for j in range(n):
            K[i, j] = mpmath.mpf(Hs[i, j])
        for r in range(m):
            K[i, n + m + r] = mpmath.mpf(J[r, i])
            K[n + m + r, i] = mpmath.mpf(J[r, i])
    rh = mpmath.mpf(rho)
    for r in range(m):
        K[n + r, n + r] = rh
        K[n + r, n + m + r] = -rh
        K[n + m + r, n + r] = -rh
    Jt_y = [mpmath.fsum(mpmath.mpf(J[r, i]) * mpmath.mpf(y[r]) for r in range(m)) for i in range(n)]
    for i in range(n):
        rhs[i] = -(mpmath.mpf(grad[i]) + Jt_y[i])
    for r in range(m):
        rhs[n + r] = -rh * (mpmath.mpf(lam[r]) - mpmath.mpf(y[r]))
        rhs[n + m + r] = -(mpmath.mpf(c[r]) + rh * (mpmath.mpf(yhat[r]) - mpmath.mpf(lam[r])))
    sol = mpmath.lu_solve(K, rhs)
    return [sol[i] for i in range(N)]


def test_condensed_system_matches_full_system(criterion):
    mpmath.mp.dps = 50
    rng = np.random.default_rng(seed_from_env(20240611))
    rhos = [10.0**-k for k in range(1, 9)]
    worst_err = worst_lam = 0.0
    inertia_ok = True
    for trial in range(100):
        n = int(rng.integers(1, 11))
        m = int(rng.integers(0, min(5, n) + 1))
        rho = rhos[trial % len(rhos)]
        B = rng.normal(size=(n, n))
        H = (B + B.T) / 2
        Sg = rng.uniform(0.0, 5.0, n)
        J = rng.normal(size=(m, n))
        grad, c = rng.normal(size=n), rng.normal(size=m)
        lam, y, yhat = rng.normal(size=m), rng.normal(size=m), rng.normal(size=m)

        fac, sigma = inertia_corrected_factorize(H, Sg, J, rho)
        inertia_ok &= fac.inertia == (n, m, 0)
        cond = solve(fac, np.concatenate([-(grad + J.T @ y), -(c + rho * (yhat - y))]))

        Hs = H + np.diag(Sg + sigma)
        full = _full_newton_oracle(Hs, J, rho, grad, c, lam, y, yhat)
        ref = np.array([float(v) for v in full[:n] + full[n + m:]])
        err = np.linalg.norm(cond - ref) / max(np.linalg.norm(ref), 1e-300)
        worst_err = max(worst_err, err)
        if m:
            dlam = np.array([float(v) for v in full[n:n + m]])
            dlam_cond = cond[n:] - (lam - y)
            worst_lam = max(worst_lam, np.linalg.norm(dlam_cond - dlam) / max(np.linalg.norm(dlam), 1e-300))
    ok = worst_err <= 1e-10 and worst_lam <= 1e-10 and inertia_ok
    criterion(6, ok, f"100 instances: rel err {worst_err:.1e}, dlam rel err {worst_lam:.1e}, inertia ok={inertia_ok}")
    assert ok


def _literal_rule(value, measure, measure_prev, k, eps, theta, kappa):
    if k == 0:
        return value
    return value if measure <= max(eps, theta * measure_prev) else kappa * value


_update_draws = {"n": 0, "bad": 0}
positive = st.floats(1e-12, 1e3, allow_nan=False)


@settings(max_examples=1000)
@given(
    value=positive, measure=st.floats(0, 1e3), prev=st.floats(0, 1e3), k=st.integers(0, 5),
    eps=st.floats(1e-10, 1e-1), theta=st.floats(0, 0.99), kappa=st.floats(0.01, 0.99),
    boundary=st.booleans(),
)
@example(value=1e-6, measure=1.0, prev=2.0, k=0, eps=1e-8, theta=0.5, kappa=0.5, boundary=False)
@example(value=1e-6, measure=0.0, prev=0.0, k=3, eps=1e-8, theta=0.5, kappa=0.5, boundary=True)
def _update_rule_draws(value, measure, prev, k, eps, theta, kappa, boundary):
    if boundary:
        measure = max(eps, theta * prev)
    want = _literal_rule(value, measure, prev, k, eps, theta, kappa)
    got_rho = update_penalty(value, measure, prev, k, eps, theta, kappa)
    got_mu = update_barrier(value, measure, prev, k, eps, theta, kappa)
    got_eps = update_tolerance(value, eps, kappa)
    _update_draws["n"] += 1
    ok = got_rho == want and got_mu == want and got_eps == max(eps, kappa * value)
    _update_draws["bad"] += not ok
    assert ok


def test_update_rules(criterion, suite_reports):
    _update_draws.update(n=0, bad=0)
    _update_rule_draws()
    bad = []
    for (name, eps), rep in suite_reports.items():
        h = rep.history
        for a, b in zip(h, h[1:]):
            if b.eps_inner != max(eps, 0.5 * a.eps_inner):
                bad.append(f"{name}@{eps} k={b.k}")
        if h and h[0].eps_inner != RegipConfig(eps=eps).initial_tolerance:
            bad.append(f"{name}@{eps} start")
    draws_ok = _update_draws["n"] >= 1000 and _update_draws["bad"] == 0
    ok = not bad and draws_ok
    criterion(7, ok, f"{_update_draws['n']} random draws, {len(suite_reports)} histories"
              + (f"; {bad[:3]}" if bad else ""))
    assert ok


def test_defaults(criterion):
    c = RegipConfig()
    eps = 1e-6
    ok = (
        c.rho0 == 1e-6 and c.theta_rho == 0.5 and c.kappa_rho == 0.5 and c.kappa_eps == 0.5
        and c.y_bound == 1e20 and c.rho_min == 1e-20
        and RegipConfig(eps=eps).initial_tolerance == eps ** (1 / 3)
        and RegipConfig(eps=eps, eps0=0.3).initial_tolerance == 0.3
        and tuple(DEFAULT_TOLERANCES) == (1e-3, 1e-5)
    )
    criterion(8, ok, "rho0=1e-6, eps0=eps^(1/3), theta=kappa=0.5, y_bound=1e20, rho_min=1e-20, tols (1e-3, 1e-5)")
    assert ok


def test_robustness_table(criterion):
    t0 = time.perf_counter()
    res = run_bench(SOLVERS, DEFAULT_TOLERANCES, time_limit=60.0)
    wall = time.perf_counter() - t0
    counts = {(s, e): res.solved_count(s, e) for s in SOLVERS for e in DEFAULT_TOLERANCES}
    beats = all(counts[("regip", e)] >= counts[(s, e)] for e in DEFAULT_TOLERANCES for s in ("ip", "bcl"))
    text = "\n".join(render_compare(compare_table(res.rows, "regip", b), "regip", b) for b in ("ip", "bcl"))
    print(text)
    layout = len(re.findall(r"\d+ & \d+\+/\d+- & \d+", text)) == 2 * 4 * len(DEFAULT_TOLERANCES)
    n_problems = len(list_problems())
    ok = n_problems >= 23 and beats and layout and wall < 600
    summary = ", ".join(f"{s}@{e:.0e}={counts[(s, e)]}" for e in DEFAULT_TOLERANCES for s in SOLVERS)
    criterion(9, ok, f"{n_problems} problems, {summary}, {wall:.0f}s")
    assert ok


def test_derivatives(criterion):
    rng = np.random.default_rng(seed_from_env(20240611))
    worst, where = 0.0, ""
    for name in list_problems():
        p = get_problem(name).problem
        for _ in range(5):
            x = rng.uniform(0.1, 2.0, p.n)
            y = rng.normal(size=p.m)
            rep = check_derivatives(p, x, y=y)
            if rep.worst > worst:
                worst, where = rep.worst, name
    ok = worst <= 1e-5
    criterion(10, ok, f"worst relative error {worst:.1e} ({where}) over {len(list_problems())} problems x 5 points")
    assert ok


def test_infeasibility_report_matches_direct_evaluation():
    # the certificate is the feasibility residual at the final point
    p = get_problem("INFEAS1").problem
    r = regip_solve(p, RegipConfig(eps=1e-6))
    direct = feasibility_residual(p, r.x, np.minimum(0.0, -p.jac(r.x).T @ p.cons(r.x)))
    assert direct.stationarity == r.infeasibility.stationarity
