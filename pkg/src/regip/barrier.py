"""Separable barrier functions on the open positive orthant."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainViolation, EvaluationFailure

_OVERFLOW = 1e308


@dataclass(frozen=True)
class BarrierFunction:
    """Coordinate barrier ``b_i`` with ``b_i(t) -> inf`` as ``t -> 0+`` and ``b_i' <= 0``.

    The three maps act elementwise on arrays.
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    first_derivative: Callable[[np.ndarray], np.ndarray]
    second_derivative: Callable[[np.ndarray], np.ndarray]


LOG_BARRIER = BarrierFunction(
    name="log",
    value=lambda t: -np.log(t),
    first_derivative=lambda t: -1.0 / t,
    second_derivative=lambda t: 1.0 / (t * t),
)


def _interior(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(x > 0):
        bad = np.flatnonzero(~(x > 0)).tolist()
        raise DomainViolation(f"barrier evaluated outside (0, inf)^n at indices {bad}")
    return x


def barrier_value(bf: BarrierFunction, x, mu: float) -> float:
    x = _interior(x)
    v = mu * float(np.sum(bf.value(x)))
    if not np.isfinite(v) or abs(v) > _OVERFLOW:
        raise EvaluationFailure("barrier value overflow")
    return v


def barrier_eval(bf: BarrierFunction, x, mu: float):
    """Return ``(mu * b(x), mu * grad b(x), mu * diag hess b(x))``."""
    if not mu > 0:
        raise ValueError("mu must be positive")
    x = _interior(x)
    value = barrier_value(bf, x, mu)
    grad = mu * bf.first_derivative(x)
    hdiag = mu * bf.second_derivative(x)
    if not (np.all(np.isfinite(grad)) and np.all(np.isfinite(hdiag))):
        raise EvaluationFailure("barrier derivatives overflow")
    return value, grad, hdiag


def compute_z(bf: BarrierFunction, x, mu: float) -> np.ndarray:
    """Bound multiplier estimate ``z = mu * grad b(x)``; nonpositive by construction."""
    if not mu > 0:
        raise ValueError("mu must be positive")
    x = _interior(x)
    return mu * bf.first_derivative(x)
