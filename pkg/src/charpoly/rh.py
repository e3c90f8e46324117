"""Numerical check of the 2 x 2 Riemann-Hilbert characterisation,

    Y(z) = [[pi_n(z),                 h_n(z)],
            [g pi_{n-1}(z), g h_{n-1}(z)]],      g = gamma_{n-1},

which is analytic off the real line, jumps by Y_+ = Y_- [[1, w], [0, 1]]
with w = exp(-N V(x)), and behaves like diag(z^n, z^-n) at infinity.

Boundary values of the Cauchy column are approximated by evaluating at
x +/- i delta through the same code path used everywhere else. The
polynomial column is entire, so its boundary values are its values on
the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cauchy import transformer
from .errors import BoundsError, DomainError
from .orthopoly import OrthoBasis, eval_monic_all, gamma_coeff
from .quadrature import QuadratureRule

__all__ = [
    "RhSample",
    "Y",
    "bulk_points",
    "jump_residual",
    "jump_scale",
    "normalization_residual",
    "residual_report",
]

DELTA_RANGE = (1e-6, 1e-2)


@dataclass(frozen=True)
class RhSample:
    z: complex
    n: int
    Y: np.ndarray


def bulk_points(potential, count: int = 20, depth: float = 2.0) -> np.ndarray:
    """``count`` evenly spaced points covering the middle three quarters of
    ``{x : V(x) - min V <= depth}``, where the weight is O(1)."""
    grid = np.linspace(-50.0, 50.0, 200001)
    inside = grid[potential.V(grid) - potential.minimum() <= depth]
    lo, hi = float(inside[0]), float(inside[-1])
    mid, half = 0.5 * (lo + hi), 0.375 * (hi - lo)
    return np.linspace(mid - half, mid + half, count)


def _check_n(basis: OrthoBasis, n: int, spare: int = 0):
    if not 1 <= n <= basis.max_degree - spare:
        raise BoundsError(f"n={n} outside [1, {basis.max_degree - spare}]")


def _poly_column(basis, n, x):
    p = eval_monic_all(basis, n, x)
    return np.array([p[n], gamma_coeff(basis, n - 1) * p[n - 1]], dtype=complex)


def _cauchy_column(basis, n, z, rule):
    h = transformer(basis, rule).values(z, n)
    return np.array([h[n], gamma_coeff(basis, n - 1) * h[n - 1]], dtype=complex)


def Y(basis: OrthoBasis, n: int, z: complex, rule: QuadratureRule) -> RhSample:
    """The matrix Y at a point off the real axis."""
    _check_n(basis, n)
    z = complex(z)
    y = np.column_stack([_poly_column(basis, n, z), _cauchy_column(basis, n, z, rule)])
    return RhSample(z, n, y)


def _boundary_values(basis, n, x, delta, rule):
    if not DELTA_RANGE[0] <= delta <= DELTA_RANGE[1]:
        raise DomainError(f"delta must lie in [{DELTA_RANGE[0]:g}, {DELTA_RANGE[1]:g}]")
    _check_n(basis, n)
    x = float(x)
    if abs(x) > rule.truncation_radius:
        raise DomainError("x must lie inside the truncation radius of the rule")
    poly = _poly_column(basis, n, x)
    upper = np.column_stack([poly, _cauchy_column(basis, n, complex(x, delta), rule)])
    lower = np.column_stack([poly, _cauchy_column(basis, n, complex(x, -delta), rule)])
    return upper, lower


def jump_residual(basis: OrthoBasis, n: int, x: float, delta: float,
                  rule: QuadratureRule) -> float:
    """Max-entry norm of ``Y(x + i delta) - Y(x - i delta) J(x)``."""
    upper, lower = _boundary_values(basis, n, x, delta, rule)
    w = float(rule.potential.weight(np.float64(x)))
    jump = np.array([[1.0, w], [0.0, 1.0]])
    return float(np.max(np.abs(upper - lower @ jump)))


def jump_scale(basis: OrthoBasis, n: int, x: float, rule: QuadratureRule) -> float:
    """Size of the jump term itself, ``exp(-N V(x)) * max|Y_11|, |Y_21|``
    at x; the natural yardstick for :func:`jump_residual`."""
    _check_n(basis, n)
    w = float(rule.potential.weight(np.float64(x)))
    return w * float(np.max(np.abs(_poly_column(basis, n, float(x)))))


def normalization_residual(basis: OrthoBasis, n: int, radius: float,
                           rule: QuadratureRule) -> float:
    """Max over 8 points on ``|z| = radius`` of ``|Y(z) diag(z^-n, z^n) - I|``."""
    _check_n(basis, n, spare=1)
    if radius < 10.0 * (1.0 + rule.truncation_radius):
        raise DomainError(
            f"radius must be at least {10.0 * (1.0 + rule.truncation_radius):.3g}"
        )
    worst = 0.0
    for j in range(8):
        z = radius * np.exp(1j * (math.pi / 8 + j * math.pi / 4))
        y = Y(basis, n, z, rule).Y
        scaled = y @ np.diag([z ** (-n), z**n])
        worst = max(worst, float(np.max(np.abs(scaled - np.eye(2)))))
    return worst


def residual_report(kind: str, rows) -> list:
    """JSON-ready list of ``{x_or_radius, n, residual}`` records."""
    if kind not in ("jump", "normalization"):
        raise DomainError(f"unknown residual kind {kind!r}")
    return [{"x_or_radius": float(a), "n": int(n), "residual": float(r)} for a, n, r in rows]
