"""Registry of small standard-form test problems.

Besides the four mandatory instances (QP1, DEGEN1, DEGEN2, INFEAS1) the
registry holds smooth problems modelled on the Hock-Schittkowski collection.
They are restated in standard form (``c(x) = 0, x >= 0``), sometimes after
shifting variables or adding slacks, so their solutions coincide with the
classical ones in the original variables but not always in ``x``.

Reference solutions are either analytic or produced offline by the
active-set enumeration oracle in ``tools/kkt_oracle.py``; the frozen values
live in :mod:`regip._references`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import UnknownProblem
from .model import GeneralNlp, NlpProblem, reformulate_to_standard
from .stationarity import feasibility_residual, is_eps_kkt, kkt_residuals

TAGS = frozenset({"regular", "degenerate", "infeasible", "nonconvex"})
REFERENCE_TOL = 1e-10


@dataclass(frozen=True)
class Reference:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    f: Optional[float]
    note: str = ""


@dataclass(frozen=True)
class ProblemRecord:
    problem: NlpProblem
    tags: frozenset
    reference: Optional[Reference] = None
    reference_kind: str = "none"  # analytic | oracle | none
    description: str = ""

    @property
    def name(self) -> str:
        return self.problem.name


def _arr(*v):
    return np.array(v, dtype=float)


def _nlp(name, n, m, f, g, c, J, H, x0, y0=None):
    return NlpProblem(
        name=name, n=n, m=m, objective=f, objective_gradient=g, constraints=c,
        constraint_jacobian=J, lagrangian_hessian=H, x0=x0, y0=y0,
    )


def _std(g: GeneralNlp) -> NlpProblem:
    return reformulate_to_standard(g)[0]


# ---------------------------------------------------------------------------
# mandatory instances
# ---------------------------------------------------------------------------


def _qp1():
    return _nlp(
        "QP1", 2, 1,
        lambda x: 0.5 * float(x @ x),
        lambda x: np.array(x, dtype=float),
        lambda x: _arr(x[0] + x[1] - 1.0),
        lambda x: np.array([[1.0, 1.0]]),
        lambda x, y: np.eye(2),
        x0=[1.0, 1.0],
    )


def _degen1():
    return _nlp(
        "DEGEN1", 1, 1,
        lambda x: float(x[0]),
        lambda x: _arr(1.0),
        lambda x: _arr(x[0] ** 2),
        lambda x: np.array([[2.0 * x[0]]]),
        lambda x, y: np.array([[2.0 * y[0]]]),
        x0=[1.0],
    )


def _degen2():
    return _nlp(
        "DEGEN2", 2, 2,
        lambda x: 0.5 * float(x @ x),
        lambda x: np.array(x, dtype=float),
        lambda x: _arr(x[0] + x[1] - 1.0, x[0] + x[1] - 1.0),
        lambda x: np.ones((2, 2)),
        lambda x, y: np.eye(2),
        x0=[1.0, 1.0],
    )


def _infeas1():
    return _nlp(
        "INFEAS1", 1, 1,
        lambda x: float(x[0]),
        lambda x: _arr(1.0),
        lambda x: _arr(x[0] ** 2 + 1.0),
        lambda x: np.array([[2.0 * x[0]]]),
        lambda x, y: np.array([[2.0 * y[0]]]),
        x0=[1.0],
    )


# ---------------------------------------------------------------------------
# further degenerate / infeasible instances
# ---------------------------------------------------------------------------


def _infeas2():
    # linear constraint with no nonnegative solution
    return _nlp(
        "INFEAS2", 2, 1,
        lambda x: 0.5 * float(x @ x),
        lambda x: np.array(x, dtype=float),
        lambda x: _arr(x[0] + x[1] + 1.0),
        lambda x: np.array([[1.0, 1.0]]),
        lambda x, y: np.eye(2),
        x0=[1.0, 1.0],
    )


def _degen3():
    # complementarity constraint x1 x2 = 0: no constraint qualification at solutions
    return _nlp(
        "DEGEN3", 2, 1,
        lambda x: float((x[0] - 1.0) ** 2 + (x[1] - 1.0) ** 2),
        lambda x: 2.0 * (np.asarray(x) - 1.0),
        lambda x: _arr(x[0] * x[1]),
        lambda x: np.array([[x[1], x[0]]]),
        lambda x, y: np.array([[2.0, y[0]], [y[0], 2.0]]),
        x0=[1.0, 0.5],
    )


def _degen4():
    # vanishing constraint gradient at the solution x = 0
    return _nlp(
        "DEGEN4", 2, 1,
        lambda x: float(x[0] + x[1]),
        lambda x: _arr(1.0, 1.0),
        lambda x: _arr(x[0] * x[1]),
        lambda x: np.array([[x[1], x[0]]]),
        lambda x, y: np.array([[0.0, y[0]], [y[0], 0.0]]),
        x0=[1.0, 2.0],
        y0=[1.0],
    )


def _hs13():
    # cusp at the solution (1, 0); no KKT multipliers exist there
    def c(x):
        return _arr((1.0 - x[0]) ** 3 - x[1])

    def J(x):
        return np.array([[-3.0 * (1.0 - x[0]) ** 2, -1.0]])

    def H(x, y):
        return np.array([[2.0 + 6.0 * y[0] * (1.0 - x[0]), 0.0], [0.0, 2.0]])

    g = GeneralNlp(
        name="HS13", n=2,
        objective=lambda x: float((x[0] - 2.0) ** 2 + x[1] ** 2),
        objective_gradient=lambda x: _arr(2.0 * (x[0] - 2.0), 2.0 * x[1]),
        constraints=c, constraint_jacobian=J, lagrangian_hessian=H,
        lower=_arr(0.0, 0.0), upper=_arr(np.inf, np.inf),
        cl=_arr(0.0), cu=_arr(np.inf), x0=_arr(0.5, 0.5),
    )
    return _std(g)


def _circle():
    return _nlp(
        "CIRCLE", 2, 1,
        lambda x: float(x[0] + x[1]),
        lambda x: _arr(1.0, 1.0),
        lambda x: _arr(x[0] ** 2 + x[1] ** 2 - 1.0),
        lambda x: np.array([[2.0 * x[0], 2.0 * x[1]]]),
        lambda x, y: 2.0 * y[0] * np.eye(2),
        x0=[0.9, 0.3],
        y0=[-1.0],
    )


# ---------------------------------------------------------------------------
# Hock-Schittkowski style instances
# ---------------------------------------------------------------------------


def _hs4():
    # bounds only; both bounds active at the solution
    g = GeneralNlp(
        name="HS4", n=2,
        objective=lambda x: float((x[0] + 1.0) ** 3 / 3.0 + x[1]),
        objective_gradient=lambda x: _arr((x[0] + 1.0) ** 2, 1.0),
        constraints=lambda x: np.zeros(0),
        constraint_jacobian=lambda x: np.zeros((0, 2)),
        lagrangian_hessian=lambda x, y: np.array([[2.0 * (x[0] + 1.0), 0.0], [0.0, 0.0]]),
        lower=_arr(1.0, 0.0), upper=_arr(np.inf, np.inf),
        cl=np.zeros(0), cu=np.zeros(0), x0=_arr(1.125, 0.125),
    )
    return _std(g)


def _hs6():
    return _nlp(
        "HS6", 2, 1,
        lambda x: float((1.0 - x[0]) ** 2),
        lambda x: _arr(-2.0 * (1.0 - x[0]), 0.0),
        lambda x: _arr(10.0 * (x[1] - x[0] ** 2)),
        lambda x: np.array([[-20.0 * x[0], 10.0]]),
        lambda x, y: np.array([[2.0 - 20.0 * y[0], 0.0], [0.0, 0.0]]),
        x0=[0.5, 2.0],
    )


def _hs7():
    def H(x, y):
        t = 1.0 + x[0] ** 2
        return np.array([
            [2.0 * (1.0 - x[0] ** 2) / t**2 + y[0] * 4.0 * (1.0 + 3.0 * x[0] ** 2), 0.0],
            [0.0, 2.0 * y[0]],
        ])

    return _nlp(
        "HS7", 2, 1,
        lambda x: float(np.log1p(x[0] ** 2) - x[1]),
        lambda x: _arr(2.0 * x[0] / (1.0 + x[0] ** 2), -1.0),
        lambda x: _arr((1.0 + x[0] ** 2) ** 2 + x[1] ** 2 - 4.0),
        lambda x: np.array([[4.0 * x[0] * (1.0 + x[0] ** 2), 2.0 * x[1]]]),
        H,
        x0=[2.0, 2.0],
    )


def _hs8():
    return _nlp(
        "HS8", 2, 2,
        lambda x: -1.0,
        lambda x: np.zeros(2),
        lambda x: _arr(x[0] ** 2 + x[1] ** 2 - 25.0, x[0] * x[1] - 9.0),
        lambda x: np.array([[2.0 * x[0], 2.0 * x[1]], [x[1], x[0]]]),
        lambda x, y: np.array([[2.0 * y[0], y[1]], [y[1], 2.0 * y[0]]]),
        x0=[2.0, 1.0],
    )


def _hs9():
    a, b = np.pi / 12.0, np.pi / 16.0

    def g(x):
        return _arr(a * np.cos(a * x[0]) * np.cos(b * x[1]), -b * np.sin(a * x[0]) * np.sin(b * x[1]))

    def H(x, y):
        s1, c1 = np.sin(a * x[0]), np.cos(a * x[0])
        s2, c2 = np.sin(b * x[1]), np.cos(b * x[1])
        return np.array([
            [-a * a * s1 * c2, -a * b * c1 * s2],
            [-a * b * c1 * s2, -b * b * s1 * c2],
        ])

    return _nlp(
        "HS9", 2, 1,
        lambda x: float(np.sin(a * x[0]) * np.cos(b * x[1])),
        g,
        lambda x: _arr(4.0 * x[0] - 3.0 * x[1]),
        lambda x: np.array([[4.0, -3.0]]),
        H,
        x0=[8.0, 10.0],
    )


def _hs14():
    g = GeneralNlp(
        name="HS14", n=2,
        objective=lambda x: float((x[0] - 2.0) ** 2 + (x[1] - 1.0) ** 2),
        objective_gradient=lambda x: _arr(2.0 * (x[0] - 2.0), 2.0 * (x[1] - 1.0)),
        constraints=lambda x: _arr(x[0] - 2.0 * x[1] + 1.0, 1.0 - 0.25 * x[0] ** 2 - x[1] ** 2),
        constraint_jacobian=lambda x: np.array([[1.0, -2.0], [-0.5 * x[0], -2.0 * x[1]]]),
        lagrangian_hessian=lambda x, y: np.array([[2.0 - 0.5 * y[1], 0.0], [0.0, 2.0 - 2.0 * y[1]]]),
        lower=_arr(0.0, 0.0), upper=_arr(np.inf, np.inf),
        cl=_arr(0.0, 0.0), cu=_arr(0.0, np.inf), x0=_arr(2.0, 2.0),
    )
    return _std(g)


def _hs21():
    g = GeneralNlp(
        name="HS21", n=2,
        objective=lambda x: float(0.01 * x[0] ** 2 + x[1] ** 2 - 100.0),
        objective_gradient=lambda x: _arr(0.02 * x[0], 2.0 * x[1]),
        constraints=lambda x: _arr(10.0 * x[0] - x[1]),
        constraint_jacobian=lambda x: np.array([[10.0, -1.0]]),
        lagrangian_hessian=lambda x, y: np.diag([0.02, 2.0]),
        lower=_arr(2.0, -50.0), upper=_arr(50.0, 50.0),
        cl=_arr(10.0), cu=_arr(np.inf), x0=_arr(3.0, 1.0),
    )
    return _std(g)


def _hs28():
    def grad(x):
        u, v = x[0] + x[1], x[1] + x[2]
        return _arr(2.0 * u, 2.0 * u + 2.0 * v, 2.0 * v)

    g = GeneralNlp(
        name="HS28", n=3,
        objective=lambda x: float((x[0] + x[1]) ** 2 + (x[1] + x[2]) ** 2),
        objective_gradient=grad,
        constraints=lambda x: _arr(x[0] + 2.0 * x[1] + 3.0 * x[2] - 1.0),
        constraint_jacobian=lambda x: np.array([[1.0, 2.0, 3.0]]),
        lagrangian_hessian=lambda x, y: np.array([[2.0, 2.0, 0.0], [2.0, 4.0, 2.0], [0.0, 2.0, 2.0]]),
        lower=np.full(3, -10.0), upper=np.full(3, np.inf),
        cl=_arr(0.0), cu=_arr(0.0), x0=_arr(-4.0, 1.0, 1.0),
    )
    return _std(g)


def _hs35():
    G = np.array([[4.0, 2.0, 2.0], [2.0, 4.0, 0.0], [2.0, 0.0, 2.0]])
    q = _arr(-8.0, -6.0, -4.0)
    g = GeneralNlp(
        name="HS35", n=3,
        objective=lambda x: float(9.0 + q @ x + 0.5 * x @ G @ x),
        objective_gradient=lambda x: q + G @ x,
        constraints=lambda x: _arr(x[0] + x[1] + 2.0 * x[2]),
        constraint_jacobian=lambda x: np.array([[1.0, 1.0, 2.0]]),
        lagrangian_hessian=lambda x, y: G.copy(),
        lower=np.zeros(3), upper=np.full(3, np.inf),
        cl=_arr(-np.inf), cu=_arr(3.0), x0=_arr(0.5, 0.5, 0.5),
    )
    return _std(g)


def _hs39():
    def H(x, y):
        return np.diag([-6.0 * x[0] * y[0] + 2.0 * y[1], 0.0, -2.0 * y[0], -2.0 * y[1]])

    g = GeneralNlp(
        name="HS39", n=4,
        objective=lambda x: float(-x[0]),
        objective_gradient=lambda x: _arr(-1.0, 0.0, 0.0, 0.0),
        constraints=lambda x: _arr(x[1] - x[0] ** 3 - x[2] ** 2, x[0] ** 2 - x[1] - x[3] ** 2),
        constraint_jacobian=lambda x: np.array([
            [-3.0 * x[0] ** 2, 1.0, -2.0 * x[2], 0.0],
            [2.0 * x[0], -1.0, 0.0, -2.0 * x[3]],
        ]),
        lagrangian_hessian=H,
        lower=np.full(4, -5.0), upper=np.full(4, np.inf),
        cl=np.zeros(2), cu=np.zeros(2), x0=_arr(2.0, 2.0, 2.0, 2.0), y0=_arr(1.0, -1.0),
    )
    return _std(g)


def _hs40():
    def grad(x):
        p = np.prod(x)
        return -np.array([p / x[i] if x[i] != 0 else np.prod(np.delete(x, i)) for i in range(4)])

    def H(x, y):
        Hf = np.zeros((4, 4))
        for i in range(4):
            for j in range(4):
                if i != j:
                    Hf[i, j] = -np.prod(np.delete(x, [i, j]))
        Hc = np.zeros((4, 4))
        Hc[0, 0] = 6.0 * x[0] * y[0] + 2.0 * x[3] * y[1]
        Hc[1, 1] = 2.0 * y[0]
        Hc[0, 3] = Hc[3, 0] = 2.0 * x[0] * y[1]
        Hc[3, 3] = 2.0 * y[2]
        return Hf + Hc

    return _nlp(
        "HS40", 4, 3,
        lambda x: float(-np.prod(x)),
        grad,
        lambda x: _arr(x[0] ** 3 + x[1] ** 2 - 1.0, x[0] ** 2 * x[3] - x[2], x[3] ** 2 - x[1]),
        lambda x: np.array([
            [3.0 * x[0] ** 2, 2.0 * x[1], 0.0, 0.0],
            [2.0 * x[0] * x[3], 0.0, -1.0, x[0] ** 2],
            [0.0, -1.0, 0.0, 2.0 * x[3]],
        ]),
        H,
        x0=[0.8, 0.8, 0.8, 0.8],
    )


def _hs42():
    t = _arr(1.0, 2.0, 3.0, 4.0)
    return _nlp(
        "HS42", 4, 2,
        lambda x: float(np.sum((x - t) ** 2)),
        lambda x: 2.0 * (x - t),
        lambda x: _arr(x[0] - 2.0, x[2] ** 2 + x[3] ** 2 - 2.0),
        lambda x: np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 2.0 * x[2], 2.0 * x[3]]]),
        lambda x, y: np.diag([2.0, 2.0, 2.0 + 2.0 * y[1], 2.0 + 2.0 * y[1]]),
        x0=[1.0, 1.0, 1.0, 1.0],
    )


def _hs48():
    def grad(x):
        return _arr(2.0 * (x[0] - 1.0), 2.0 * (x[1] - x[2]), -2.0 * (x[1] - x[2]), 2.0 * (x[3] - x[4]), -2.0 * (x[3] - x[4]))

    Hf = np.zeros((5, 5))
    Hf[0, 0] = 2.0
    Hf[1:3, 1:3] = [[2.0, -2.0], [-2.0, 2.0]]
    Hf[3:5, 3:5] = [[2.0, -2.0], [-2.0, 2.0]]
    A = np.array([[1.0, 1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 1.0, -2.0, -2.0]])
    return _nlp(
        "HS48", 5, 2,
        lambda x: float((x[0] - 1.0) ** 2 + (x[1] - x[2]) ** 2 + (x[3] - x[4]) ** 2),
        grad,
        lambda x: A @ x - _arr(5.0, -3.0),
        lambda x: A.copy(),
        lambda x, y: Hf.copy(),
        x0=[3.0, 5.0, 0.5, 2.0, 0.5],
    )


def _hs50():
    def f(x):
        return float((x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 2 + (x[2] - x[3]) ** 4 + (x[3] - x[4]) ** 4)

    def grad(x):
        a, b = 2.0 * (x[0] - x[1]), 2.0 * (x[1] - x[2])
        c, d = 4.0 * (x[2] - x[3]) ** 3, 4.0 * (x[3] - x[4]) ** 3
        return _arr(a, -a + b, -b + c, -c + d, -d)

    def H(x, y):
        c2, d2 = 12.0 * (x[2] - x[3]) ** 2, 12.0 * (x[3] - x[4]) ** 2
        return np.array([
            [2.0, -2.0, 0.0, 0.0, 0.0],
            [-2.0, 4.0, -2.0, 0.0, 0.0],
            [0.0, -2.0, 2.0 + c2, -c2, 0.0],
            [0.0, 0.0, -c2, c2 + d2, -d2],
            [0.0, 0.0, 0.0, -d2, d2],
        ])

    A = np.array([[1.0, 2.0, 3.0, 0.0, 0.0], [0.0, 1.0, 2.0, 3.0, 0.0], [0.0, 0.0, 1.0, 2.0, 3.0]])
    return _nlp("HS50", 5, 3, f, grad, lambda x: A @ x - 6.0, lambda x: A.copy(), H, x0=[3.0, 0.5, 1.5, 0.5, 1.0])


def _hs51():
    def grad(x):
        a, b = 2.0 * (x[0] - x[1]), 2.0 * (x[1] + x[2] - 2.0)
        return _arr(a, -a + b, b, 2.0 * (x[3] - 1.0), 2.0 * (x[4] - 1.0))

    Hf = np.array([
        [2.0, -2.0, 0.0, 0.0, 0.0],
        [-2.0, 4.0, 2.0, 0.0, 0.0],
        [0.0, 2.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 2.0],
    ])
    A = np.array([[1.0, 3.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0, -2.0], [0.0, 1.0, 0.0, 0.0, -1.0]])
    return _nlp(
        "HS51", 5, 3,
        lambda x: float((x[0] - x[1]) ** 2 + (x[1] + x[2] - 2.0) ** 2 + (x[3] - 1.0) ** 2 + (x[4] - 1.0) ** 2),
        grad,
        lambda x: A @ x - _arr(4.0, 0.0, 0.0),
        lambda x: A.copy(),
        lambda x, y: Hf.copy(),
        x0=[2.5, 0.5, 2.0, 1.0, 0.5],
    )


def _hs71():
    def grad(x):
        s = x[0] + x[1] + x[2]
        return _arr(x[3] * s + x[0] * x[3], x[0] * x[3], x[0] * x[3] + 1.0, x[0] * s)

    def c(x):
        return _arr(np.prod(x), float(x @ x))

    def J(x):
        p = [np.prod(np.delete(x, i)) for i in range(4)]
        return np.array([p, 2.0 * x])

    def H(x, y):
        s = x[0] + x[1] + x[2]
        Hf = np.array([
            [2.0 * x[3], x[3], x[3], 2.0 * x[0] + x[1] + x[2]],
            [x[3], 0.0, 0.0, x[0]],
            [x[3], 0.0, 0.0, x[0]],
            [s + x[0], x[0], x[0], 0.0],
        ])
        Hp = np.zeros((4, 4))
        for i in range(4):
            for j in range(4):
                if i != j:
                    Hp[i, j] = np.prod(np.delete(x, [i, j]))
        return Hf + y[0] * Hp + 2.0 * y[1] * np.eye(4)

    g = GeneralNlp(
        name="HS71", n=4,
        objective=lambda x: float(x[0] * x[3] * (x[0] + x[1] + x[2]) + x[2]),
        objective_gradient=grad,
        constraints=c, constraint_jacobian=J, lagrangian_hessian=H,
        lower=np.ones(4), upper=np.full(4, np.inf),
        cl=_arr(25.0, 40.0), cu=_arr(np.inf, 40.0), x0=_arr(1.0, 5.0, 5.0, 1.0),
    )
    return _std(g)


def _hs79():
    s2 = np.sqrt(2.0)

    def f(x):
        return float((x[0] - 1.0) ** 2 + (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 2 + (x[2] - x[3]) ** 4 + (x[3] - x[4]) ** 4)

    def grad(x):
        a, b, c = 2.0 * (x[0] - 1.0), 2.0 * (x[0] - x[1]), 2.0 * (x[1] - x[2])
        d, e = 4.0 * (x[2] - x[3]) ** 3, 4.0 * (x[3] - x[4]) ** 3
        return _arr(a + b, -b + c, -c + d, -d + e, -e)

    def cons(x):
        return _arr(
            x[0] + x[1] ** 2 + x[2] ** 3 - 2.0 - 3.0 * s2,
            x[1] - x[2] ** 2 + x[3] + 2.0 - 2.0 * s2,
            x[0] * x[4] - 2.0,
        )

    def J(x):
        return np.array([
            [1.0, 2.0 * x[1], 3.0 * x[2] ** 2, 0.0, 0.0],
            [0.0, 1.0, -2.0 * x[2], 1.0, 0.0],
            [x[4], 0.0, 0.0, 0.0, x[0]],
        ])

    def H(x, y):
        d2, e2 = 12.0 * (x[2] - x[3]) ** 2, 12.0 * (x[3] - x[4]) ** 2
        Hf = np.array([
            [4.0, -2.0, 0.0, 0.0, 0.0],
            [-2.0, 4.0, -2.0, 0.0, 0.0],
            [0.0, -2.0, 2.0 + d2, -d2, 0.0],
            [0.0, 0.0, -d2, d2 + e2, -e2],
            [0.0, 0.0, 0.0, -e2, e2],
        ])
        Hc = np.zeros((5, 5))
        Hc[1, 1] = 2.0 * y[0]
        Hc[2, 2] = 6.0 * x[2] * y[0] - 2.0 * y[1]
        Hc[0, 4] = Hc[4, 0] = y[2]
        return Hf + Hc

    return _nlp("HS79", 5, 3, f, grad, cons, J, H, x0=[2.0, 2.0, 2.0, 2.0, 2.0])


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_BUILDERS = {
    "QP1": (_qp1, {"regular"}, "min 0.5||x||^2 s.t. x1 + x2 = 1"),
    "DEGEN1": (_degen1, {"degenerate"}, "min x s.t. x^2 = 0; LICQ fails at x = 0"),
    "DEGEN2": (_degen2, {"degenerate"}, "QP1 with its constraint duplicated; rank-deficient Jacobian"),
    "DEGEN3": (_degen3, {"degenerate", "nonconvex"}, "complementarity constraint x1 x2 = 0"),
    "DEGEN4": (_degen4, {"degenerate", "nonconvex"}, "min x1 + x2 s.t. x1 x2 = 0; zero Jacobian at solution"),
    "INFEAS1": (_infeas1, {"infeasible"}, "min x s.t. x^2 + 1 = 0"),
    "INFEAS2": (_infeas2, {"infeasible"}, "linear constraint x1 + x2 = -1 with x >= 0"),
    "CIRCLE": (_circle, {"regular", "nonconvex"}, "min x1 + x2 on the unit circle"),
    "HS4": (_hs4, {"regular"}, "HS4 shifted to x >= 0; bound constraints only"),
    "HS6": (_hs6, {"regular", "nonconvex"}, "HS6 restricted to x >= 0"),
    "HS7": (_hs7, {"regular", "nonconvex"}, "HS7 restricted to x >= 0; weakly active bound"),
    "HS8": (_hs8, {"regular", "nonconvex"}, "HS8 restricted to x >= 0; constant objective"),
    "HS9": (_hs9, {"regular", "nonconvex"}, "HS9 restricted to x >= 0"),
    "HS13": (_hs13, {"degenerate"}, "HS13 with slack; cusp, no KKT point at the minimizer"),
    "HS14": (_hs14, {"regular", "nonconvex"}, "HS14 with slack, x >= 0"),
    "HS21": (_hs21, {"regular"}, "HS21 shifted, slacks for upper bounds and inequality"),
    "HS28": (_hs28, {"regular"}, "HS28 shifted by 10"),
    "HS35": (_hs35, {"regular"}, "HS35 with slack"),
    "HS39": (_hs39, {"regular", "nonconvex"}, "HS39 shifted by 5"),
    "HS40": (_hs40, {"regular", "nonconvex"}, "HS40 restricted to x >= 0"),
    "HS42": (_hs42, {"regular", "nonconvex"}, "HS42 restricted to x >= 0"),
    "HS48": (_hs48, {"regular"}, "HS48 restricted to x >= 0"),
    "HS50": (_hs50, {"regular"}, "HS50 restricted to x >= 0"),
    "HS51": (_hs51, {"regular"}, "HS51 restricted to x >= 0"),
    "HS71": (_hs71, {"regular", "nonconvex"}, "HS71 shifted, upper bounds dropped (inactive)"),
    "HS79": (_hs79, {"regular", "nonconvex"}, "HS79 restricted to x >= 0"),
}


def _analytic_references():
    s3 = np.sqrt(3.0)
    return {
        "QP1": Reference(_arr(0.5, 0.5), _arr(-0.5), _arr(0.0, 0.0), 0.25, "analytic KKT solve"),
        "DEGEN1": Reference(_arr(0.0), _arr(0.0), _arr(-1.0), 0.0, "analytic; any y is a multiplier"),
        "DEGEN2": Reference(_arr(0.5, 0.5), _arr(-0.25, -0.25), _arr(0.0, 0.0), 0.25, "analytic; y1 + y2 = -0.5"),
        "DEGEN3": Reference(_arr(1.0, 0.0), _arr(2.0), _arr(0.0, 0.0), 1.0, "analytic; any y >= 2"),
        "DEGEN4": Reference(_arr(0.0, 0.0), _arr(0.0), _arr(-1.0, -1.0), 0.0, "analytic; any y"),
        # infeasible records carry a stationary point of 0.5||c||^2 and its bound multiplier
        "INFEAS1": Reference(_arr(0.0), _arr(0.0), _arr(0.0), None, "minimizer of 0.5 (x^2 + 1)^2 on x >= 0"),
        "INFEAS2": Reference(_arr(0.0, 0.0), _arr(0.0), _arr(-1.0, -1.0), None, "minimizer of 0.5 (x1 + x2 + 1)^2 on x >= 0"),
        "HS7": Reference(_arr(0.0, s3), _arr(1.0 / (2.0 * s3)), _arr(0.0, 0.0), -s3, "analytic"),
    }


def _build_registry():
    from ._references import ORACLE_REFERENCES

    analytic = _analytic_references()
    reg = {}
    for name, (builder, tags, desc) in _BUILDERS.items():
        problem = builder()
        assert problem.name == name
        if name in analytic:
            ref, kind = analytic[name], "analytic"
        elif name in ORACLE_REFERENCES:
            x, y, z, f = ORACLE_REFERENCES[name]
            ref, kind = Reference(_arr(*x), _arr(*y), _arr(*z), f, "active-set enumeration oracle"), "oracle"
        else:
            ref, kind = None, "none"
        reg[name] = ProblemRecord(problem=problem, tags=frozenset(tags), reference=ref, reference_kind=kind, description=desc)
    return reg


def verify_reference(record: ProblemRecord, tol: float = REFERENCE_TOL) -> bool:
    """Re-check a record's reference point with the stationarity residuals."""
    ref = record.reference
    if ref is None:
        return True
    if "infeasible" in record.tags:
        r = feasibility_residual(record.problem, ref.x, ref.z)
    else:
        r = kkt_residuals(record.problem, ref.x, ref.y, ref.z)
    return is_eps_kkt(r, tol)


_REGISTRY = None


def _registry():
    global _REGISTRY
    if _REGISTRY is None:
        reg = _build_registry()
        bad = [name for name, rec in reg.items() if not verify_reference(rec)]
        if bad:
            raise RuntimeError(f"reference solutions fail the KKT check: {bad}")
        _REGISTRY = reg
    return _REGISTRY


def get_problem(name: str) -> ProblemRecord:
    try:
        return _registry()[name]
    except KeyError:
        raise UnknownProblem(name) from None


def list_problems(tags=None) -> list[str]:
    """Sorted problem names, optionally restricted to records carrying all of ``tags``."""
    tags = frozenset(tags or ())
    unknown = tags - TAGS
    if unknown:
        raise ValueError(f"unknown tags {sorted(unknown)}")
    return sorted(name for name, rec in _registry().items() if tags <= rec.tags)
