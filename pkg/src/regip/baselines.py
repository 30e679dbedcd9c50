"""Reference solvers for robustness comparisons.

``plain_ip_solve`` is a textbook barrier method: Newton on the primal-dual
barrier equations with an unregularized constraint block.  ``bcl_solve`` is
a safeguarded bound-constrained augmented Lagrangian method whose
subproblems are solved by a full barrier continuation.  Both reuse the
point evaluation, barrier and KKT code of the main solver.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .barrier import LOG_BARRIER, BarrierFunction, barrier_eval, barrier_value, compute_z
from .errors import (
    DomainViolation,
    EvaluationFailure,
    InertiaCorrectionFailure,
    NonFiniteEntry,
    RefinementFailure,
    SingularMatrix,
)
from .kkt import SigmaState, inertia_corrected_factorize, solve
from .model import NlpProblem, evaluate_point
from .outer import (
    OuterRecord,
    SolveReport,
    Status,
    complementarity_measure,
    infeasibility_multiplier,
    safeguard_dual,
    update_penalty,
    update_tolerance,
)
from .stationarity import feasibility_residual, is_eps_kkt, kkt_residuals
from .subsolver import ARMIJO, MAX_BACKTRACKS, TAU, SubproblemSpec, fraction_to_boundary, solve_subproblem

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class BaselineConfig:
    eps: float = 1e-8
    mu0: float = 0.1
    mu_shrink: float = 0.2
    max_outer: int = 200
    max_inner: int = 200
    time_limit: float = 60.0
    # augmented Lagrangian side, used by bcl_solve only
    rho0: float = 1e-6
    theta_rho: float = 0.5
    kappa_rho: float = 0.5
    kappa_eps: float = 0.5
    eps0: Optional[float] = None
    y_bound: float = 1e20
    rho_min: float = 1e-20
    barrier: BarrierFunction = LOG_BARRIER

    def __post_init__(self):
        for name in ("eps", "mu0", "rho0", "y_bound", "rho_min", "time_limit"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("mu_shrink", "kappa_rho", "kappa_eps"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        if not 0 <= self.theta_rho < 1:
            raise ValueError("theta_rho must lie in [0, 1)")
        if self.max_outer < 1 or self.max_inner < 1:
            raise ValueError("iteration budgets must be positive")

    @property
    def initial_tolerance(self) -> float:
        return self.eps0 if self.eps0 is not None else self.eps ** (1.0 / 3.0)


def _report(problem, solver, status, x, y, z, history, inner, t0, message="", infeasible=False):
    rep = SolveReport(
        status=status, x=x, y=y, z=z,
        residuals=kkt_residuals(problem, x, y, z),
        history=history, inner_iterations=inner,
        wall_seconds=time.perf_counter() - t0,
        problem=problem.name, solver=solver, f=problem.f(x), message=message,
    )
    if infeasible:
        rep.infeasibility = feasibility_residual(problem, x, infeasibility_multiplier(problem, x))
    return rep


# ---------------------------------------------------------------------------
# plain interior point
# ---------------------------------------------------------------------------


def _penalty_merit(problem, bf, x, mu, nu):
    try:
        return problem.f(x) + barrier_value(bf, x, mu) + nu * float(np.linalg.norm(problem.cons(x)))
    except (EvaluationFailure, DomainViolation):
        return np.inf


def _barrier_kkt_error(problem, bf, x, y, mu):
    ev = evaluate_point(problem, x, y)
    _, bgrad, _ = barrier_eval(bf, x, mu)
    return ev, bgrad, max(float(np.linalg.norm(ev.g + ev.J.T @ y + bgrad)), float(np.linalg.norm(ev.c)))


def plain_ip_solve(problem: NlpProblem, cfg: BaselineConfig = BaselineConfig()) -> SolveReport:
    """Barrier continuation with unregularized Newton steps on ``(x, y)``.

    Each barrier problem ``min f + mu b s.t. c = 0`` is solved by Newton's
    method on its optimality conditions, globalized by an l2 exact penalty
    merit; ``mu`` then shrinks by ``mu_shrink``.  Without dual
    regularization a rank-deficient Jacobian leaves zero pivots that no
    primal shift can remove, which ends the run with ``SubsolverFailure``.
    """
    t0 = time.perf_counter()
    deadline = t0 + cfg.time_limit
    bf = cfg.barrier
    n, m = problem.n, problem.m
    x = problem.interior_start()
    y = np.array(problem.y0, dtype=float)
    mu = cfg.mu0
    z = compute_z(bf, x, mu)
    nu = 1.0
    state = SigmaState()
    history: list[OuterRecord] = []
    total_inner = 0

    def done(status, message=""):
        return _report(problem, "ip", status, x, y, z, history, total_inner, t0, message)

    for k in range(cfg.max_outer):
        inner = 0
        while True:
            if time.perf_counter() > deadline:
                return done(Status.TIME_LIMIT)
            try:
                ev, bgrad, err = _barrier_kkt_error(problem, bf, x, y, mu)
            except EvaluationFailure as exc:
                return done(Status.SUBSOLVER_FAILURE, f"evaluation failure: {exc}")
            z = compute_z(bf, x, mu)
            if is_eps_kkt(kkt_residuals(problem, x, y, z), cfg.eps):
                history.append(_ip_record(k, mu, cfg.eps, x, y, z, ev, inner, err))
                return done(Status.OPTIMAL)
            if err <= 10.0 * mu:
                break
            if inner >= cfg.max_inner:
                history.append(_ip_record(k, mu, cfg.eps, x, y, z, ev, inner, err, "MaxIter"))
                return done(Status.SUBSOLVER_FAILURE, "barrier problem: iteration budget exhausted")

            _, _, bhess = barrier_eval(bf, x, mu)
            gb = ev.g + bgrad
            try:
                fac, _ = inertia_corrected_factorize(ev.H, bhess, ev.J, 0.0, state, allow_zero_rho=True)
                d = solve(fac, -np.concatenate([gb + ev.J.T @ y, ev.c]))
            except (InertiaCorrectionFailure, RefinementFailure, SingularMatrix, NonFiniteEntry) as exc:
                history.append(_ip_record(k, mu, cfg.eps, x, y, z, ev, inner, err, "LinAlgFailure"))
                return done(Status.SUBSOLVER_FAILURE, f"barrier problem: {exc}")
            dx, dy = d[:n], d[n:]

            cnorm = float(np.linalg.norm(ev.c))
            nu = max(nu, float(np.linalg.norm(y + dy)) + 1.0) if m else nu
            slope = float(gb @ dx) - nu * cnorm
            if slope >= 0 and cnorm > 0:
                nu += (slope + 1.0) / cnorm
                slope = float(gb @ dx) - nu * cnorm
            psi0 = _penalty_merit(problem, bf, x, mu, nu)
            alpha = fraction_to_boundary(x, dx, TAU)
            noise = 10.0 * _EPS * (abs(psi0) + 1.0)
            accepted = False
            for _ in range(MAX_BACKTRACKS):
                trial = x + alpha * dx
                if -alpha * slope <= noise:
                    # merit flat to rounding: fall back to the barrier KKT error
                    try:
                        accepted = _barrier_kkt_error(problem, bf, trial, y + alpha * dy, mu)[2] < err
                    except (EvaluationFailure, DomainViolation):
                        accepted = False
                else:
                    accepted = _penalty_merit(problem, bf, trial, mu, nu) <= psi0 + ARMIJO * alpha * slope
                if accepted:
                    break
                alpha *= 0.5
            if not accepted:
                history.append(_ip_record(k, mu, cfg.eps, x, y, z, ev, inner, err, "MaxIter"))
                return done(Status.SUBSOLVER_FAILURE, "barrier problem: line search failed")
            x = trial
            y = y + alpha * dy
            inner += 1
            total_inner += 1

        history.append(_ip_record(k, mu, cfg.eps, x, y, z, ev, inner, err))
        mu *= cfg.mu_shrink
    return done(Status.MAX_OUTER)


def _ip_record(k, mu, eps, x, y, z, ev, inner, err, sub_status="Converged"):
    return OuterRecord(
        k=k, rho=0.0, mu=mu, eps_inner=eps, C=float(np.linalg.norm(ev.c)),
        V=complementarity_measure(x, z), inner_iterations=inner, stationarity=err,
        x=x.copy(), y=y.copy(), z=z.copy(), yhat=y.copy(),
        dual_residual=float(np.linalg.norm(ev.c)), sub_status=sub_status,
    )


# ---------------------------------------------------------------------------
# bound-constrained augmented Lagrangian
# ---------------------------------------------------------------------------


def bcl_solve(problem: NlpProblem, cfg: BaselineConfig = BaselineConfig()) -> SolveReport:
    """Safeguarded augmented Lagrangian with a nested barrier continuation.

    For each outer iteration the bound-constrained subproblem
    ``min_{x >= 0} f + ||c + rho yhat||^2 / (2 rho)`` is solved by a sequence
    of barrier problems with ``mu`` shrinking from ``mu0`` until the
    complementarity measure drops below the outer tolerance.  Multiplier,
    penalty and tolerance updates and the exits match :func:`regip_solve`.
    """
    t0 = time.perf_counter()
    deadline = t0 + cfg.time_limit
    eps, bf = cfg.eps, cfg.barrier
    x = problem.interior_start()
    y_prev = np.array(problem.y0, dtype=float)
    y = y_prev.copy()
    z = compute_z(bf, x, cfg.mu0)
    rho, eps_k = cfg.rho0, cfg.initial_tolerance
    C_prev = 0.0
    state = SigmaState()
    history: list[OuterRecord] = []
    total_inner = 0

    def done(status, message="", infeasible=False):
        return _report(problem, "bcl", status, x, y, z, history, total_inner, t0, message, infeasible)

    for k in range(cfg.max_outer):
        reset = not np.all(np.isfinite(y_prev))
        yhat = np.zeros(problem.m) if reset else safeguard_dual(y_prev, cfg.y_bound)
        mu = cfg.mu0
        inner = 0
        while True:
            if time.perf_counter() > deadline:
                return done(Status.TIME_LIMIT)
            spec = SubproblemSpec(problem, mu, rho, yhat, eps_k, cfg.max_inner, bf)
            sub = solve_subproblem(spec, x, sigma_state=state, deadline=deadline)
            inner += sub.inner_iterations
            total_inner += sub.inner_iterations
            if not sub.converged:
                status = Status.TIME_LIMIT if time.perf_counter() > deadline else Status.SUBSOLVER_FAILURE
                return done(status, f"subproblem {sub.status.value}: {sub.message}")
            x, y = sub.x, sub.y
            z = compute_z(bf, x, mu)
            if complementarity_measure(x, z) <= eps_k:
                break
            mu *= cfg.mu_shrink

        c = problem.cons(x)
        C = float(np.linalg.norm(c))
        history.append(
            OuterRecord(
                k=k, rho=rho, mu=mu, eps_inner=eps_k, C=C, V=complementarity_measure(x, z),
                inner_iterations=inner, stationarity=sub.final_stationarity,
                x=x.copy(), y=y.copy(), z=z.copy(), yhat=yhat.copy(),
                dual_residual=float(np.linalg.norm(c + rho * (yhat - y))), yhat_reset=reset,
            )
        )
        if is_eps_kkt(kkt_residuals(problem, x, y, z), eps):
            return done(Status.OPTIMAL)
        if eps_k <= eps and C > eps and rho <= cfg.rho_min:
            return done(Status.INFEASIBLE, infeasible=True)
        rho = update_penalty(rho, C, C_prev, k, eps, cfg.theta_rho, cfg.kappa_rho)
        eps_k = update_tolerance(eps_k, eps, cfg.kappa_eps)
        C_prev = C
        y_prev = y
    return done(Status.MAX_OUTER)
