"""Regularized interior point outer loop.

Each outer iteration approximately solves a single proximally regularized
barrier subproblem, then updates the penalty ``rho``, the barrier parameter
``mu`` and the inner tolerance together.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .barrier import LOG_BARRIER, BarrierFunction, compute_z
from .kkt import SigmaState
from .model import NlpProblem
from .stationarity import KktResiduals, feasibility_residual, is_eps_kkt, kkt_residuals
from .subsolver import DEFAULT_MAX_INNER, SubproblemSpec, solve_subproblem

SCHEMA_VERSION = 1
DEFAULT_TOLERANCES = (1e-3, 1e-5)


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    MAX_OUTER = "MaxOuter"
    TIME_LIMIT = "TimeLimit"
    SUBSOLVER_FAILURE = "SubsolverFailure"


@dataclass(frozen=True)
class RegipConfig:
    eps: float = 1e-8
    eps0: Optional[float] = None  # None -> eps ** (1/3)
    rho0: float = 1e-6
    mu0: float = 0.1
    kappa_rho: float = 0.5
    kappa_mu: float = 0.5
    kappa_eps: float = 0.5
    theta_rho: float = 0.5
    theta_mu: float = 0.5
    y_bound: float = 1e20
    rho_min: float = 1e-20
    max_outer: int = 500
    max_inner: int = DEFAULT_MAX_INNER
    time_limit: float = 60.0
    barrier: BarrierFunction = LOG_BARRIER

    def __post_init__(self):
        for name in ("eps", "rho0", "mu0", "y_bound", "rho_min", "time_limit"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("kappa_rho", "kappa_mu", "kappa_eps"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        for name in ("theta_rho", "theta_mu"):
            if not 0 <= getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in [0, 1)")
        if self.eps0 is not None and not self.eps0 > 0:
            raise ValueError("eps0 must be positive")

    @property
    def initial_tolerance(self) -> float:
        return self.eps0 if self.eps0 is not None else self.eps ** (1.0 / 3.0)


@dataclass
class OuterRecord:
    k: int
    rho: float
    mu: float
    eps_inner: float
    C: float
    V: float
    inner_iterations: int
    stationarity: float
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    yhat: np.ndarray
    dual_residual: float  # ||c + rho (yhat - y)||
    sub_status: str = "Converged"
    retried: bool = False
    yhat_reset: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rho": self.rho,
            "mu": self.mu,
            "eps_inner": self.eps_inner,
            "C": self.C,
            "V": self.V,
            "inner_iterations": self.inner_iterations,
            "stationarity": self.stationarity,
            "dual_residual": self.dual_residual,
            "sub_status": self.sub_status,
            "retried": self.retried,
            "yhat_reset": self.yhat_reset,
        }


@dataclass
class SolveReport:
    status: Status
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    residuals: KktResiduals
    history: list = field(default_factory=list)
    inner_iterations: int = 0
    wall_seconds: float = 0.0
    problem: str = ""
    solver: str = "regip"
    f: float = float("nan")
    infeasibility: Optional[KktResiduals] = None
    message: str = ""

    @property
    def outer_iterations(self) -> int:
        return len(self.history)

    @property
    def solved(self) -> bool:
        return self.status is Status.OPTIMAL

    def to_dict(self) -> dict:
        r = self.residuals
        out = {
            "schema": SCHEMA_VERSION,
            "problem": self.problem,
            "solver": self.solver,
            "status": self.status.value,
            "f": _json_float(self.f),
            "x": [_json_float(v) for v in self.x],
            "y": [_json_float(v) for v in self.y],
            "z": [_json_float(v) for v in self.z],
            "residuals": {
                "stationarity": _json_float(r.stationarity),
                "feasibility": _json_float(r.primal_feasibility),
                "complementarity": _json_float(r.complementarity),
            },
            "outer_iterations": self.outer_iterations,
            "inner_iterations": self.inner_iterations,
            "wall_seconds": self.wall_seconds,
            "history": [h.to_dict() for h in self.history],
        }
        if self.infeasibility is not None:
            out["infeasibility_stationarity"] = _json_float(self.infeasibility.stationarity)
        if self.message:
            out["message"] = self.message
        return out


def _json_float(v):
    v = float(v)
    return v if math.isfinite(v) else None


# ---------------------------------------------------------------------------
# parameter updates
# ---------------------------------------------------------------------------


def safeguard_dual(y, y_bound: float) -> np.ndarray:
    """Project ``y`` onto the box ``||v||_inf <= y_bound``."""
    if not y_bound > 0:
        raise ValueError("y_bound must be positive")
    return np.clip(np.asarray(y, dtype=float), -y_bound, y_bound)


def update_penalty(rho, C_k, C_prev, k, eps, theta_rho=0.5, kappa_rho=0.5) -> float:
    """Keep ``rho`` on satisfactory feasibility progress, else shrink it by ``kappa_rho``."""
    if k == 0 or C_k <= max(eps, theta_rho * C_prev):
        return rho
    return kappa_rho * rho


def update_barrier(mu, V_k, V_prev, k, eps, theta_mu=0.5, kappa_mu=0.5) -> float:
    """Same rule as :func:`update_penalty`, driven by the complementarity measure."""
    if k == 0 or V_k <= max(eps, theta_mu * V_prev):
        return mu
    return kappa_mu * mu


def update_tolerance(eps_k, eps, kappa_eps=0.5) -> float:
    return max(eps, kappa_eps * eps_k)


def complementarity_measure(x, z) -> float:
    return float(np.linalg.norm(np.minimum(np.asarray(x, dtype=float), -np.asarray(z, dtype=float))))


# ---------------------------------------------------------------------------
# main loop
# ---------------------------------------------------------------------------


def regip_solve(problem: NlpProblem, config: RegipConfig = RegipConfig()) -> SolveReport:
    """Run the regularized interior point method on ``problem``.

    Never raises for algorithmic failures; the outcome is in ``report.status``.
    """
    cfg = config
    t0 = time.perf_counter()
    deadline = t0 + cfg.time_limit
    eps = cfg.eps
    bf = cfg.barrier

    x = problem.interior_start()
    y_prev = np.array(problem.y0, dtype=float)
    y = y_prev.copy()
    z = compute_z(bf, x, cfg.mu0)
    rho, mu, eps_k = cfg.rho0, cfg.mu0, cfg.initial_tolerance
    C_prev = V_prev = 0.0
    sigma_state = SigmaState()
    history: list[OuterRecord] = []
    total_inner = 0
    status = Status.MAX_OUTER
    message = ""

    for k in range(cfg.max_outer):
        if time.perf_counter() > deadline:
            status = Status.TIME_LIMIT
            break
        reset = not np.all(np.isfinite(y_prev))
        yhat = np.zeros(problem.m) if reset else safeguard_dual(y_prev, cfg.y_bound)

        spec = SubproblemSpec(problem, mu, rho, yhat, eps_k, cfg.max_inner, bf)
        sub = solve_subproblem(spec, x, sigma_state=sigma_state, deadline=deadline)
        total_inner += sub.inner_iterations
        retried = False
        if not sub.converged and time.perf_counter() <= deadline:
            # one retry with stronger regularization and a larger budget
            retried = True
            rho, mu = cfg.kappa_rho * rho, cfg.kappa_mu * mu
            spec = replace(spec, rho=rho, mu=mu, max_iterations=2 * cfg.max_inner)
            sub = solve_subproblem(spec, x, sigma_state=sigma_state, deadline=deadline)
            total_inner += sub.inner_iterations
        if not sub.converged:
            status = Status.TIME_LIMIT if time.perf_counter() > deadline else Status.SUBSOLVER_FAILURE
            message = f"subproblem {sub.status.value}: {sub.message}"
            break

        x, y = sub.x, sub.y
        z = compute_z(bf, x, mu)
        c = problem.cons(x)
        C = float(np.linalg.norm(c))
        V = complementarity_measure(x, z)
        res = kkt_residuals(problem, x, y, z)
        history.append(
            OuterRecord(
                k=k, rho=rho, mu=mu, eps_inner=eps_k, C=C, V=V,
                inner_iterations=sub.inner_iterations, stationarity=sub.final_stationarity,
                x=x.copy(), y=y.copy(), z=z.copy(), yhat=yhat.copy(),
                dual_residual=float(np.linalg.norm(c + rho * (yhat - y))),
                retried=retried, yhat_reset=reset,
            )
        )

        # covers the practical rule (eps_k <= eps and C <= eps) once complementarity is also met
        if is_eps_kkt(res, eps):
            status = Status.OPTIMAL
            break
        if eps_k <= eps and C > eps and rho <= cfg.rho_min:
            status = Status.INFEASIBLE
            break

        rho_next = update_penalty(rho, C, C_prev, k, eps, cfg.theta_rho, cfg.kappa_rho)
        mu_next = update_barrier(mu, V, V_prev, k, eps, cfg.theta_mu, cfg.kappa_mu)
        eps_k = update_tolerance(eps_k, eps, cfg.kappa_eps)
        rho, mu = rho_next, mu_next
        C_prev, V_prev = C, V
        y_prev = y

    report = SolveReport(
        status=status,
        x=x,
        y=y,
        z=z,
        residuals=kkt_residuals(problem, x, y, z),
        history=history,
        inner_iterations=total_inner,
        wall_seconds=time.perf_counter() - t0,
        problem=problem.name,
        solver="regip",
        f=problem.f(x),
        message=message,
    )
    if status is Status.INFEASIBLE:
        report.infeasibility = feasibility_residual(problem, x, infeasibility_multiplier(problem, x))
    return report


def infeasibility_multiplier(problem: NlpProblem, x) -> np.ndarray:
    """Bound multiplier for ``min 0.5||c(x)||^2, x >= 0`` that best fits stationarity.

    ``min(0, -J^T c)`` zeroes every gradient component that a nonpositive
    multiplier can cancel; what remains measures genuine non-stationarity.
    """
    grad = problem.jac(x).T @ problem.cons(x)
    return np.minimum(0.0, -grad)
