"""Standard-form problem description, evaluation bundle and reformulation.

The standard form handled by every solver in the package is::

    minimize    f(x)
    subject to  c(x) = 0,  x >= 0

with ``x`` in R^n and ``c`` mapping into R^m.  General bounds on variables and
constraint values are mapped onto this form by :func:`reformulate_to_standard`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatch, DomainViolation, EvaluationFailure, InconsistentBounds

Array = np.ndarray

#: initial points are pushed at least this far into the interior
INTERIOR_CLAMP = 1e-2


def _frozen(a, dtype=float) -> Array:
    out = np.array(a, dtype=dtype, copy=True).reshape(-1)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class NlpProblem:
    """Smooth problem ``min f(x) s.t. c(x) = 0, x >= 0`` with exact derivatives.

    ``lagrangian_hessian(x, y)`` returns the Hessian of ``f(x) + <y, c(x)>``;
    barrier terms are never part of it.
    """

    name: str
    n: int
    m: int
    objective: Callable[[Array], float]
    objective_gradient: Callable[[Array], Array]
    constraints: Callable[[Array], Array]
    constraint_jacobian: Callable[[Array], Array]
    lagrangian_hessian: Callable[[Array, Array], Array]
    x0: Array
    y0: Optional[Array] = None

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise DimensionMismatch(f"{self.name}: need n >= 1 and m >= 0, got n={self.n}, m={self.m}")
        x0 = _frozen(self.x0)
        y0 = _frozen(np.zeros(self.m) if self.y0 is None else self.y0)
        if x0.size != self.n or y0.size != self.m:
            raise DimensionMismatch(f"{self.name}: x0/y0 sizes do not match n={self.n}, m={self.m}")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "y0", y0)

    def interior_start(self) -> Array:
        """x0 clamped into the open orthant, ``max(x0_i, 1e-2)``."""
        return np.maximum(self.x0, INTERIOR_CLAMP)

    # thin checked wrappers; all callbacks go through these
    def f(self, x: Array) -> float:
        v = float(self.objective(x))
        if not np.isfinite(v):
            raise EvaluationFailure(f"{self.name}: objective is not finite")
        return v

    def grad(self, x: Array) -> Array:
        return _checked(self.objective_gradient(x), (self.n,), self.name, "objective gradient")

    def cons(self, x: Array) -> Array:
        if self.m == 0:
            return np.zeros(0)
        return _checked(self.constraints(x), (self.m,), self.name, "constraints")

    def jac(self, x: Array) -> Array:
        if self.m == 0:
            return np.zeros((0, self.n))
        return _checked(self.constraint_jacobian(x), (self.m, self.n), self.name, "constraint Jacobian")

    def hess(self, x: Array, y: Array) -> Array:
        return _checked(self.lagrangian_hessian(x, y), (self.n, self.n), self.name, "Lagrangian Hessian")


def _checked(value, shape, name, what) -> Array:
    a = np.asarray(value, dtype=float)
    if a.shape != shape:
        try:
            a = a.reshape(shape)
        except ValueError:
            raise DimensionMismatch(f"{name}: {what} has shape {a.shape}, expected {shape}") from None
    if not np.all(np.isfinite(a)):
        raise EvaluationFailure(f"{name}: {what} contains non-finite values")
    return a


@dataclass(frozen=True)
class PointEval:
    x: Array
    y: Array
    f: float
    g: Array
    c: Array
    J: Array
    H: Array


def _as_vector(v, size, label) -> Array:
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.size != size:
        raise DimensionMismatch(f"{label} has length {a.size}, expected {size}")
    return a


def evaluate_point(problem: NlpProblem, x, y) -> PointEval:
    """Evaluate every first and second order quantity at ``(x, y)`` in one pass.

    Raises :class:`DomainViolation` unless ``x > 0`` elementwise.
    """
    x = _as_vector(x, problem.n, "x")
    y = _as_vector(y, problem.m, "y")
    if not np.all(x > 0):
        raise DomainViolation(f"{problem.name}: evaluation point must satisfy x > 0, got min(x) = {x.min():g}")
    x = x.copy()
    y = y.copy()
    H = problem.hess(x, y)
    H = 0.5 * (H + H.T)
    return PointEval(
        x=x,
        y=y,
        f=problem.f(x),
        g=problem.grad(x),
        c=problem.cons(x),
        J=problem.jac(x),
        H=H,
    )


# ---------------------------------------------------------------------------
# general form and reformulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralNlp:
    """``min f(x) s.t. cl <= c(x) <= cu, l <= x <= u``.

    Equality rows have ``cl_j == cu_j``; infinite entries mark absent bounds.
    """

    name: str
    n: int
    objective: Callable[[Array], float]
    objective_gradient: Callable[[Array], Array]
    constraints: Callable[[Array], Array]
    constraint_jacobian: Callable[[Array], Array]
    lagrangian_hessian: Callable[[Array, Array], Array]
    lower: Array
    upper: Array
    cl: Array
    cu: Array
    x0: Array
    y0: Optional[Array] = None

    @property
    def mc(self) -> int:
        return int(np.asarray(self.cl).size)


@dataclass(frozen=True)
class StandardMap:
    """Affine link between standard-form variables ``w`` and original ``x``.

    ``x = offset + T @ w``.  The trailing ``n_slack`` entries of ``w`` are
    slacks and do not appear in ``T``.
    """

    offset: Array
    T: Array
    n_slack: int
    # position of original constraint j in the standard constraint vector (or -1 if dropped)
    row_of: Array = field(repr=False)

    def recover(self, w) -> Array:
        w = np.asarray(w, dtype=float)
        return self.offset + self.T @ w

    __call__ = recover


def _bounds_array(v, n, fill):
    if v is None:
        return np.full(n, fill)
    return np.asarray(v, dtype=float).reshape(-1)


def reformulate_to_standard(g: GeneralNlp) -> tuple[NlpProblem, StandardMap]:
    """Rewrite a general-form problem as ``c(w) = 0, w >= 0``.

    Variables with a finite lower bound are shifted, variables with only an
    upper bound are reflected, free variables are split as ``p - q``.  A
    second finite bound, and every inequality row, gets one slack.

    Returns the standard problem and the map ``recover`` back to ``x``.
    """
    n = g.n
    l = _bounds_array(g.lower, n, -np.inf)
    u = _bounds_array(g.upper, n, np.inf)
    mc = g.mc
    cl = _bounds_array(g.cl, mc, -np.inf)
    cu = _bounds_array(g.cu, mc, np.inf)
    if l.size != n or u.size != n or cu.size != mc:
        raise DimensionMismatch(f"{g.name}: bound arrays do not match problem sizes")
    if np.any(l > u):
        raise InconsistentBounds(f"{g.name}: lower bound exceeds upper bound at {np.flatnonzero(l > u).tolist()}")
    if np.any(cl > cu):
        raise InconsistentBounds(f"{g.name}: cl exceeds cu at {np.flatnonzero(cl > cu).tolist()}")

    x0 = np.asarray(g.x0, dtype=float).reshape(-1)

    # --- variable part: columns of T and matching start values
    cols = []  # list of (orig index, sign)
    offset = np.zeros(n)
    w0 = []
    var_rows = []  # (column index, upper - lower) for doubly bounded variables
    for i in range(n):
        if np.isfinite(l[i]):
            offset[i] = l[i]
            cols.append((i, 1.0))
            w0.append(x0[i] - l[i])
            if np.isfinite(u[i]):
                var_rows.append((len(cols) - 1, u[i] - l[i]))
        elif np.isfinite(u[i]):
            offset[i] = u[i]
            cols.append((i, -1.0))
            w0.append(u[i] - x0[i])
        else:
            cols.append((i, 1.0))
            w0.append(max(x0[i], 0.0) + 1.0)
            cols.append((i, -1.0))
            w0.append(max(-x0[i], 0.0) + 1.0)
    nv = len(cols)
    T = np.zeros((n, nv))
    for k, (i, s) in enumerate(cols):
        T[i, k] = s

    # --- constraint part
    c0 = np.asarray(g.constraints(x0), dtype=float).reshape(-1) if mc else np.zeros(0)
    # each standard row is ("c", j, rhs, slack_col, slack_sign) or ("lin", coeffs over w, rhs)
    rows = []
    slack_w0 = []
    row_of = np.full(mc, -1, dtype=int)

    def new_slack(val):
        slack_w0.append(val)
        return nv + len(slack_w0) - 1

    for j in range(mc):
        lo, hi = cl[j], cu[j]
        if np.isfinite(lo) and lo == hi:
            row_of[j] = len(rows)
            rows.append(("c", j, lo, None, 0.0))
        elif np.isfinite(lo) and np.isfinite(hi):
            s = new_slack(c0[j] - lo)
            row_of[j] = len(rows)
            rows.append(("c", j, lo, s, -1.0))
            t = new_slack(hi - c0[j])
            rows.append(("lin", {s: 1.0, t: 1.0}, hi - lo))
        elif np.isfinite(lo):
            s = new_slack(c0[j] - lo)
            row_of[j] = len(rows)
            rows.append(("c", j, lo, s, -1.0))
        elif np.isfinite(hi):
            s = new_slack(hi - c0[j])
            row_of[j] = len(rows)
            rows.append(("c", j, hi, s, 1.0))
    for k, width in var_rows:
        t = new_slack(width - w0[k])
        rows.append(("lin", {k: 1.0, t: 1.0}, width))

    n_slack = len(slack_w0)
    N = nv + n_slack
    M = len(rows)
    Tfull = np.hstack([T, np.zeros((n, n_slack))])
    smap = StandardMap(offset=offset, T=Tfull, n_slack=n_slack, row_of=row_of)

    c_idx = np.array([k for k, r in enumerate(rows) if r[0] == "c"], dtype=int)
    c_orig = np.array([r[1] for r in rows if r[0] == "c"], dtype=int)
    A_lin = np.zeros((M, N))
    b_lin = np.zeros(M)
    for k, r in enumerate(rows):
        if r[0] == "c":
            if r[3] is not None:
                A_lin[k, r[3]] = r[4]
            b_lin[k] = -r[2]
        else:
            for col, coef in r[1].items():
                A_lin[k, col] = coef
            b_lin[k] = -r[2]

    def x_of(w):
        return offset + T @ np.asarray(w, dtype=float)[:nv]

    def f(w):
        return g.objective(x_of(w))

    def grad(w):
        out = np.zeros(N)
        out[:nv] = T.T @ np.asarray(g.objective_gradient(x_of(w)), dtype=float)
        return out

    def cons(w):
        out = A_lin @ np.asarray(w, dtype=float) + b_lin
        if c_idx.size:
            out[c_idx] += np.asarray(g.constraints(x_of(w)), dtype=float).reshape(-1)[c_orig]
        return out

    def jac(w):
        out = A_lin.copy()
        if c_idx.size:
            Jx = np.asarray(g.constraint_jacobian(x_of(w)), dtype=float).reshape(mc, n)
            out[c_idx, :nv] += Jx[c_orig] @ T
        return out

    def hess(w, y):
        y_orig = np.zeros(mc)
        if c_idx.size:
            y_orig[c_orig] = np.asarray(y, dtype=float)[c_idx]
        Hx = np.asarray(g.lagrangian_hessian(x_of(w), y_orig), dtype=float).reshape(n, n)
        out = np.zeros((N, N))
        out[:nv, :nv] = T.T @ Hx @ T
        return out

    y0_std = np.zeros(M)
    if g.y0 is not None and c_idx.size:
        y0_std[c_idx] = np.asarray(g.y0, dtype=float)[c_orig]

    problem = NlpProblem(
        name=g.name,
        n=N,
        m=M,
        objective=f,
        objective_gradient=grad,
        constraints=cons,
        constraint_jacobian=jac,
        lagrangian_hessian=hess,
        x0=np.concatenate([np.asarray(w0, dtype=float), np.asarray(slack_w0, dtype=float)]),
        y0=y0_std,
    )
    return problem, smap


def general_feasible(g: GeneralNlp, x, tol: float = 1e-9) -> bool:
    """Whether ``x`` satisfies all bounds of ``g`` up to ``tol``."""
    x = np.asarray(x, dtype=float)
    l = _bounds_array(g.lower, g.n, -np.inf)
    u = _bounds_array(g.upper, g.n, np.inf)
    if np.any(x < l - tol) or np.any(x > u + tol):
        return False
    if g.mc == 0:
        return True
    c = np.asarray(g.constraints(x), dtype=float).reshape(-1)
    cl = _bounds_array(g.cl, g.mc, -np.inf)
    cu = _bounds_array(g.cu, g.mc, np.inf)
    return bool(np.all(c >= cl - tol) and np.all(c <= cu + tol))


# ---------------------------------------------------------------------------
# derivative checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivativeReport:
    gradient: float
    jacobian: float
    hessian: float

    @property
    def worst(self) -> float:
        return max(self.gradient, self.jacobian, self.hessian)

    def passed(self, tol: float = 1e-5) -> bool:
        return self.worst <= tol


def _rel_err(fd, exact) -> float:
    fd = np.asarray(fd, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if fd.size == 0:
        return 0.0
    return float(np.max(np.abs(fd - exact) / np.maximum(1.0, np.abs(exact))))


def check_derivatives(problem: NlpProblem, x, step: float = 1e-6, y=None) -> DerivativeReport:
    """Compare supplied derivatives with central differences.

    The step for coordinate ``i`` is ``step * max(1, |x_i|)``.  The Hessian
    block differences the Lagrangian gradient at multipliers ``y`` (all ones
    by default, so every constraint curvature term is exercised).
    """
    x = _as_vector(x, problem.n, "x")
    if not np.all(x > 0):
        raise DomainViolation("derivative check requires x > 0")
    if step <= 0:
        raise ValueError("step must be positive")
    y = np.ones(problem.m) if y is None else _as_vector(y, problem.m, "y")

    def lag_grad(p):
        return problem.grad(p) + problem.jac(p).T @ y

    n = problem.n
    g_fd = np.zeros(n)
    J_fd = np.zeros((problem.m, n))
    H_fd = np.zeros((n, n))
    for i in range(n):
        h = step * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        g_fd[i] = (problem.f(xp) - problem.f(xm)) / (2 * h)
        J_fd[:, i] = (problem.cons(xp) - problem.cons(xm)) / (2 * h)
        H_fd[:, i] = (lag_grad(xp) - lag_grad(xm)) / (2 * h)
    return DerivativeReport(
        gradient=_rel_err(g_fd, problem.grad(x)),
        jacobian=_rel_err(J_fd, problem.jac(x)),
        hessian=_rel_err(H_fd, problem.hess(x, y)),
    )
