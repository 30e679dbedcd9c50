"""Damped Newton solver for one regularized barrier subproblem.

For fixed ``mu, rho, yhat`` the subproblem is, after eliminating the
proximal variable ``lam = yhat + c(x) / rho``::

    minimize_x  phi(x) = f(x) + ||c(x) + rho * yhat||^2 / (2 rho) + mu * b(x)

Each iteration solves the condensed system::

    [[H + Sigma + sigma I, J^T ], [dx]     [grad phi(x)]
     [J,                  -rho I]] [dy] = -[0          ]

with ``y = yhat + c(x)/rho``; its ``dx`` is the Newton step on ``phi``.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .barrier import LOG_BARRIER, BarrierFunction, barrier_eval, barrier_value
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

TAU = 0.995
ARMIJO = 1e-4
MAX_BACKTRACKS = 50
DEFAULT_MAX_INNER = 200
_EPS = np.finfo(float).eps


class SubStatus(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    LINALG_FAILURE = "LinAlgFailure"


@dataclass(frozen=True)
class SubproblemSpec:
    problem: NlpProblem
    mu: float
    rho: float
    yhat: np.ndarray
    eps_inner: float
    max_iterations: int = DEFAULT_MAX_INNER
    barrier: BarrierFunction = LOG_BARRIER

    def __post_init__(self):
        if not (self.mu > 0 and self.rho > 0 and self.eps_inner > 0):
            raise ValueError("mu, rho and eps_inner must be positive")
        object.__setattr__(self, "yhat", np.asarray(self.yhat, dtype=float).reshape(-1))


@dataclass(frozen=True)
class StepRecord:
    merit_before: float
    merit_after: float
    alpha: float
    sigma: float
    inertia: tuple
    # accepted on a stationarity decrease because phi was flat to rounding
    roundoff: bool = False


@dataclass
class SubResult:
    x: np.ndarray
    lam: np.ndarray
    y: np.ndarray
    inner_iterations: int
    status: SubStatus
    final_stationarity: float
    steps: list = field(default_factory=list)
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status is SubStatus.CONVERGED


def multiplier_estimate(c_val, yhat, rho: float) -> np.ndarray:
    """``y(x) = yhat + c(x) / rho``."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    return np.asarray(yhat, dtype=float) + np.asarray(c_val, dtype=float) / rho


def _merit_parts(spec: SubproblemSpec, x):
    p = spec.problem
    f = p.f(x)
    a = p.cons(x) + spec.rho * spec.yhat
    pen = float(a @ a) / (2.0 * spec.rho)
    bar = barrier_value(spec.barrier, x, spec.mu)
    return f, pen, bar


def merit_value(spec: SubproblemSpec, x) -> float:
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainViolation("merit evaluated outside the open orthant")
    return sum(_merit_parts(spec, x))


def fraction_to_boundary(x, dx, tau: float = TAU) -> float:
    """Largest ``alpha <= 1`` keeping ``x + alpha dx >= (1 - tau) x``."""
    x = np.asarray(x, dtype=float)
    dx = np.asarray(dx, dtype=float)
    neg = dx < 0
    if not np.any(neg):
        return 1.0
    return float(min(1.0, np.min(-tau * x[neg] / dx[neg])))


def _safe_merit(spec, x):
    try:
        parts = _merit_parts(spec, x)
    except (EvaluationFailure, DomainViolation, FloatingPointError):
        return np.inf, np.inf
    val = sum(parts)
    return (val, sum(abs(t) for t in parts)) if np.isfinite(val) else (np.inf, np.inf)


def _merit_gradient(spec, x):
    p = spec.problem
    c = p.cons(x)
    y = multiplier_estimate(c, spec.yhat, spec.rho)
    _, bgrad, _ = barrier_eval(spec.barrier, x, spec.mu)
    return p.grad(x) + p.jac(x).T @ y + bgrad


def solve_subproblem(
    spec: SubproblemSpec,
    x_start,
    *,
    sigma_state: Optional[SigmaState] = None,
    deadline: Optional[float] = None,
) -> SubResult:
    """Approximately minimize the barrier-BCL function to ``eps_inner`` stationarity.

    Stops with ``Converged`` once ``||grad f + J^T y + mu grad b|| <= eps_inner``
    with ``y = lam = yhat + c/rho``; ``MaxIter`` when the iteration budget, the
    deadline, or a line search runs out; ``LinAlgFailure`` when inertia
    correction or refinement fails.
    """
    p = spec.problem
    x = np.array(x_start, dtype=float).reshape(-1)
    if not np.all(x > 0):
        raise DomainViolation("subproblem start must be strictly positive")
    state = sigma_state if sigma_state is not None else SigmaState()
    n, m = p.n, p.m
    steps = []
    stat = np.inf
    y = spec.yhat.copy()

    def result(status, it, msg=""):
        return SubResult(
            x=x.copy(), lam=y.copy(), y=y.copy(), inner_iterations=it, status=status,
            final_stationarity=float(stat), steps=steps, message=msg,
        )

    it = 0
    while True:
        try:
            c = p.cons(x)
            y = multiplier_estimate(c, spec.yhat, spec.rho)
            ev = evaluate_point(p, x, y)
            _, bgrad, bhess = barrier_eval(spec.barrier, x, spec.mu)
        except EvaluationFailure as exc:
            return result(SubStatus.MAX_ITER, it, f"evaluation failure: {exc}")
        grad = ev.g + ev.J.T @ y + bgrad
        stat = float(np.linalg.norm(grad))
        if stat <= spec.eps_inner:
            return result(SubStatus.CONVERGED, it)
        if it >= spec.max_iterations:
            return result(SubStatus.MAX_ITER, it, "iteration budget exhausted")
        if deadline is not None and time.perf_counter() > deadline:
            return result(SubStatus.MAX_ITER, it, "time limit")

        try:
            fac, sigma = inertia_corrected_factorize(ev.H, bhess, ev.J, spec.rho, state)
            d = solve(fac, np.concatenate([-grad, np.zeros(m)]))
        except (InertiaCorrectionFailure, RefinementFailure, SingularMatrix, NonFiniteEntry) as exc:
            return result(SubStatus.LINALG_FAILURE, it, str(exc))
        dx = d[:n]
        slope = float(grad @ dx)
        alpha_max = fraction_to_boundary(x, dx, TAU)
        phi0, scale0 = _safe_merit(spec, x)
        noise = 10.0 * _EPS * scale0

        accepted = None
        if -alpha_max * slope > noise:
            alpha = alpha_max
            for _ in range(MAX_BACKTRACKS):
                trial = x + alpha * dx
                phi, _ = _safe_merit(spec, trial)
                if phi <= phi0 + ARMIJO * alpha * slope and phi < phi0:
                    accepted = StepRecord(phi0, phi, alpha, sigma, fac.inertia)
                    break
                alpha *= 0.5
        else:
            # phi cannot resolve the predicted decrease; fall back to the gradient norm
            alpha = alpha_max
            for _ in range(MAX_BACKTRACKS):
                trial = x + alpha * dx
                try:
                    g_trial = float(np.linalg.norm(_merit_gradient(spec, trial)))
                except (EvaluationFailure, DomainViolation):
                    g_trial = np.inf
                if g_trial < stat:
                    phi, _ = _safe_merit(spec, trial)
                    accepted = StepRecord(phi0, phi, alpha, sigma, fac.inertia, roundoff=True)
                    break
                alpha *= 0.5
        if accepted is None:
            return result(SubStatus.MAX_ITER, it, "line search failed")
        x = trial
        steps.append(accepted)
        it += 1
