"""Approximate KKT residuals for the standard form and its feasibility problem."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch
from .model import NlpProblem


@dataclass(frozen=True)
class KktResiduals:
    """Residuals of ``eps``-KKT stationarity.

    stationarity:       ||grad f + J^T y + z||
    primal_feasibility: ||c(x)||
    complementarity:    ||min{x, -z}||
    bound_violation:    max(0, -min_i x_i)
    sign_violation:     max(0, max_i z_i)
    """

    stationarity: float
    primal_feasibility: float
    complementarity: float
    bound_violation: float
    sign_violation: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.stationarity,
            self.primal_feasibility,
            self.complementarity,
            self.bound_violation,
            self.sign_violation,
        )

    def to_dict(self) -> dict:
        return asdict(self)


def _vec(v, size, label):
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.size != size:
        raise DimensionMismatch(f"{label} has length {a.size}, expected {size}")
    return a


def _sign_parts(x, z):
    complementarity = float(np.linalg.norm(np.minimum(x, -z)))
    bound_violation = max(0.0, -float(np.min(x)))
    sign_violation = max(0.0, float(np.max(z)))
    return complementarity, bound_violation, sign_violation


def kkt_residuals(problem: NlpProblem, x, y, z) -> KktResiduals:
    x = _vec(x, problem.n, "x")
    y = _vec(y, problem.m, "y")
    z = _vec(z, problem.n, "z")
    r = problem.grad(x) + problem.jac(x).T @ y + z
    comp, bv, sv = _sign_parts(x, z)
    return KktResiduals(
        stationarity=float(np.linalg.norm(r)),
        primal_feasibility=float(np.linalg.norm(problem.cons(x))),
        complementarity=comp,
        bound_violation=bv,
        sign_violation=sv,
    )


def is_eps_kkt(r: KktResiduals, eps: float) -> bool:
    if not eps > 0:
        raise ValueError("eps must be positive")
    return all(v <= eps for v in r.as_tuple())


def feasibility_residual(problem: NlpProblem, x, ztilde) -> KktResiduals:
    """KKT residuals of ``min_{x >= 0} 0.5 ||c(x)||^2`` with bound multiplier ``ztilde``.

    Certifies (local) infeasibility: the constraint-feasibility field is not
    part of this problem and is reported as zero.
    """
    x = _vec(x, problem.n, "x")
    z = _vec(ztilde, problem.n, "ztilde")
    r = problem.jac(x).T @ problem.cons(x) + z
    comp, bv, sv = _sign_parts(x, z)
    return KktResiduals(
        stationarity=float(np.linalg.norm(r)),
        primal_feasibility=0.0,
        complementarity=comp,
        bound_violation=bv,
        sign_violation=sv,
    )
