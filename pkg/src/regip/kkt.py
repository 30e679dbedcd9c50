"""Regularized saddle-point systems: assembly, LDL^T factorization with inertia,
solves with iterative refinement, and the inertia-correction loop.

The matrix handled here is::

    W = [[H + diag(Sigma) + sigma I,  J^T   ],
         [J,                          -rho I]]

With ``rho > 0`` and a positive definite (1,1) block, ``W`` is symmetric
quasi-definite and its inertia is exactly ``(n, m, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (
    DimensionMismatch,
    InertiaCorrectionFailure,
    NonFiniteEntry,
    RefinementFailure,
    SingularMatrix,
)

PIVOT_TOL = 1e-14
RESIDUAL_TOL = 1e-8
MAX_REFINEMENT = 3

SIGMA_FIRST = 1e-4
SIGMA_GROWTH = 10.0
SIGMA_DECAY = 3.0
SIGMA_FLOOR = 1e-20
SIGMA_MAX = 1e20


@dataclass(frozen=True)
class KktSystem:
    W: np.ndarray
    n: int
    m: int
    rho: float
    sigma: float
    sigma_diag: np.ndarray


def assemble_kkt(H, sigma_diag, J, rho: float, sigma: float = 0.0, *, allow_zero_rho: bool = False) -> KktSystem:
    """Place the blocks into one dense symmetric matrix.

    ``allow_zero_rho`` admits the unregularized ``rho = 0`` system used by the
    plain interior point baseline.
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    n = H.shape[0]
    Sg = np.asarray(sigma_diag, dtype=float).reshape(-1)
    J = np.asarray(J, dtype=float)
    if J.size == 0:
        J = J.reshape(0, n)
    J = np.atleast_2d(J)
    m = J.shape[0]
    if H.shape != (n, n) or Sg.size != n or J.shape[1] != n:
        raise DimensionMismatch(f"inconsistent KKT blocks: H {H.shape}, Sigma {Sg.shape}, J {J.shape}")
    if rho < 0 or (rho == 0 and not allow_zero_rho):
        raise ValueError("dual regularization rho must be positive")
    if sigma < 0:
        raise ValueError("primal regularization sigma must be nonnegative")
    W = np.empty((n + m, n + m))
    W[:n, :n] = H
    W[:n, :n] += np.diag(Sg + sigma)
    W[:n, n:] = J.T
    W[n:, :n] = J
    W[n:, n:] = 0.0
    W[n:, n:] -= rho * np.eye(m)
    if not np.all(np.isfinite(W)):
        raise NonFiniteEntry("KKT matrix has non-finite entries")
    return KktSystem(W=W, n=n, m=m, rho=float(rho), sigma=float(sigma), sigma_diag=Sg)


def _equilibrate(W, sweeps: int = 3) -> np.ndarray:
    # symmetric Ruiz scaling; a congruence, so the inertia is unchanged
    s = np.ones(W.shape[0])
    A = np.abs(W)
    for _ in range(sweeps):
        r = np.max(A * s[:, None] * s[None, :], axis=1)
        r[r == 0] = 1.0
        s /= np.sqrt(r)
    return s


def _d_blocks(D):
    """Split block-diagonal D into 1x1 / 2x2 blocks as (start, size) pairs."""
    N = D.shape[0]
    blocks = []
    i = 0
    while i < N:
        if i + 1 < N and D[i + 1, i] != 0.0:
            blocks.append((i, 2))
            i += 2
        else:
            blocks.append((i, 1))
            i += 1
    return blocks


@dataclass(frozen=True)
class Factorization:
    """``P S W S P^T = L D L^T`` with ``S`` a diagonal equilibration."""

    W: np.ndarray
    scale: np.ndarray
    perm: np.ndarray
    L: np.ndarray  # unit lower triangular, rows already permuted
    D: np.ndarray
    inertia: tuple[int, int, int]
    _Dinv: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.W.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Rebuild ``W`` from the factors."""
        N = self.size
        Pt = np.empty(N, dtype=int)
        Pt[self.perm] = np.arange(N)
        M = (self.L @ self.D @ self.L.T)[np.ix_(Pt, Pt)]
        return M / self.scale[:, None] / self.scale[None, :]

    def _solve_once(self, rhs):
        p = self.perm
        b = (self.scale * rhs)[p]
        w = sla.solve_triangular(self.L, b, lower=True, unit_diagonal=True, check_finite=False)
        w = self._Dinv @ w
        w = sla.solve_triangular(self.L, w, lower=True, trans="T", unit_diagonal=True, check_finite=False)
        out = np.empty_like(w)
        out[p] = w
        return self.scale * out


def factorize(sys) -> Factorization:
    """Bunch-Kaufman LDL^T of the (equilibrated) KKT matrix.

    Inertia is read from the eigenvalues of D's 1x1 and 2x2 blocks; a block
    eigenvalue within ``1e-14 * max|S W S|`` of zero raises
    :class:`SingularMatrix`.
    """
    W = sys.W if isinstance(sys, KktSystem) else np.asarray(sys, dtype=float)
    if not np.all(np.isfinite(W)):
        raise NonFiniteEntry("KKT matrix has non-finite entries")
    s = _equilibrate(W)
    Ws = W * s[:, None] * s[None, :]
    lu, D, perm = sla.ldl(Ws, lower=True, check_finite=False)
    L = lu[perm]
    tol = PIVOT_TOL * float(np.max(np.abs(Ws))) if Ws.size else 0.0
    pos = neg = zero = 0
    Dinv = np.zeros_like(D)
    for i, k in _d_blocks(D):
        blk = D[i : i + k, i : i + k]
        ev = np.linalg.eigvalsh(blk) if k == 2 else blk.diagonal()
        for e in ev:
            if abs(e) <= tol:
                zero += 1
            elif e > 0:
                pos += 1
            else:
                neg += 1
        if k == 1:
            Dinv[i, i] = 1.0 / blk[0, 0] if blk[0, 0] != 0.0 else 0.0
        else:
            Dinv[i : i + 2, i : i + 2] = np.linalg.inv(blk) if np.all(np.abs(ev) > 0) else 0.0
    inertia = (pos, neg, zero)
    if zero:
        raise SingularMatrix(f"zero pivot in LDL^T (inertia {inertia})", inertia=inertia)
    return Factorization(W=W, scale=s, perm=perm, L=L, D=D, inertia=inertia, _Dinv=Dinv)


def solve(fac: Factorization, rhs) -> np.ndarray:
    """Solve ``W sol = rhs`` with up to three steps of iterative refinement.

    Raises :class:`RefinementFailure` if ``||W sol - rhs|| <= 1e-8 (1 + ||rhs||)``
    is still violated afterwards.
    """
    rhs = np.asarray(rhs, dtype=float).reshape(-1)
    if rhs.size != fac.size:
        raise DimensionMismatch(f"rhs has length {rhs.size}, expected {fac.size}")
    bound = RESIDUAL_TOL * (1.0 + np.linalg.norm(rhs))
    sol = fac._solve_once(rhs)
    for _ in range(MAX_REFINEMENT):
        res = rhs - fac.W @ sol
        if np.linalg.norm(res) <= bound:
            return sol
        sol = sol + fac._solve_once(res)
    res = rhs - fac.W @ sol
    if not np.linalg.norm(res) <= bound:
        raise RefinementFailure(f"residual {np.linalg.norm(res):.3e} exceeds {bound:.3e} after refinement")
    return sol


@dataclass
class SigmaState:
    """Warm start for the primal regularization trial sequence."""

    start: float = 0.0
    last_used: float = 0.0
    trials: int = 0


def next_sigma(sigma: float) -> float:
    return SIGMA_FIRST if sigma < SIGMA_FIRST else SIGMA_GROWTH * sigma


def inertia_corrected_factorize(H, sigma_diag, J, rho: float, state: SigmaState | None = None, *, allow_zero_rho=False):
    """Factorize with the smallest trial ``sigma`` that yields inertia ``(n, m, 0)``.

    Trials start at ``state.start`` (0 on a fresh state), then jump to 1e-4
    and grow tenfold up to 1e20.  On success the next call starts from
    ``max(1e-20, sigma_used / 3)``.

    Returns ``(factorization, sigma_used)``.
    """
    if state is None:
        state = SigmaState()
    sigma = state.start
    while True:
        sys = assemble_kkt(H, sigma_diag, J, rho, sigma, allow_zero_rho=allow_zero_rho)
        state.trials += 1
        try:
            fac = factorize(sys)
        except SingularMatrix:
            fac = None
        if fac is not None and fac.inertia == (sys.n, sys.m, 0):
            state.last_used = sigma
            state.start = max(SIGMA_FLOOR, sigma / SIGMA_DECAY)
            return fac, sigma
        sigma = next_sigma(sigma)
        if sigma > SIGMA_MAX:
            raise InertiaCorrectionFailure("primal regularization exceeded 1e20 without correct inertia")
