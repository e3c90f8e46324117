"""Determinantal formulas for averages of characteristic polynomials.

    K_N(eps, mu) = < prod_l det(mu_l - H) / prod_k det(eps_k - H) >

is the determinant of an (M+L) x (M+L) matrix whose rows are Cauchy
transforms h_{N-M+j}(eps_i) and monic polynomials pi_{N-M+j}(mu_i),
times prod_{j=N-M}^{N-1} gamma_j and divided by the Vandermonde factors of
mu and eps. Entries span hundreds of orders of magnitude, so rows and
columns are rescaled and the determinant is kept as (log|det|, phase).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .cauchy import CauchyTransformer, check_epsilon, transformer
from .errors import BoundsError, ConfigurationError, DegenerateInputError, DomainError
from .orthopoly import OrthoBasis, eval_scaled_all
from .quadrature import QuadratureRule

__all__ = [
    "SpectralArguments",
    "CorrelationValue",
    "avg_product",
    "avg_inverse",
    "correlation_general",
    "vandermonde",
    "UNRELIABLE_RCOND",
]

UNRELIABLE_RCOND = 1e-13
_LOG_OVERFLOW = 700.0
_SEPARATION = 1e-10


def _check_distinct(points, name):
    pts = list(points)
    if not pts:
        return
    scale = 1.0 + max(abs(p) for p in pts)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= _SEPARATION * scale:
                raise DegenerateInputError(
                    f"{name}[{i}] and {name}[{j}] coincide ({pts[i]!r}); "
                    "confluent limits are not supported"
                )


@dataclass(frozen=True)
class SpectralArguments:
    """Denominator points ``epsilons`` (off the real axis) and numerator
    points ``mus`` for an N x N ensemble."""

    epsilons: tuple
    mus: tuple
    matrix_size: int

    def __post_init__(self):
        eps = tuple(check_epsilon(e) for e in self.epsilons)
        mus = tuple(complex(m) for m in self.mus)
        n = int(self.matrix_size)
        if n < 1:
            raise ConfigurationError("matrix_size must be positive")
        if len(eps) > n or len(mus) > n:
            raise ConfigurationError(
                f"need M <= N and L <= N (M={len(eps)}, L={len(mus)}, N={n})"
            )
        if not all(math.isfinite(m.real) and math.isfinite(m.imag) for m in mus):
            raise DomainError("mu values must be finite")
        _check_distinct(eps, "epsilons")
        _check_distinct(mus, "mus")
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "mus", mus)
        object.__setattr__(self, "matrix_size", n)

    @property
    def M(self) -> int:
        return len(self.epsilons)

    @property
    def L(self) -> int:
        return len(self.mus)


@dataclass(frozen=True)
class CorrelationValue:
    """Result kept as ``exp(log_modulus) * phase``.

    ``value`` is ``None`` when it would overflow. ``prefactor_log`` is the
    log-modulus contributed by the gamma product, the Vandermonde factors
    and the row/column rescalings.
    """

    log_modulus: float
    phase: complex
    value: Optional[complex]
    condition_estimate: float
    prefactor_log: float

    @property
    def reliable(self) -> bool:
        return self.condition_estimate >= UNRELIABLE_RCOND

    @classmethod
    def from_parts(cls, log_modulus, phase, rcond, prefactor_log):
        if log_modulus == -math.inf:
            value = 0j
        elif log_modulus < _LOG_OVERFLOW:
            value = complex(math.exp(log_modulus) * phase)
        else:
            value = None
        return cls(float(log_modulus), complex(phase), value, float(rcond), float(prefactor_log))

    def to_json(self) -> dict:
        return {
            "log_modulus": self.log_modulus,
            "phase_re": self.phase.real,
            "phase_im": self.phase.imag,
            "value_re": None if self.value is None else self.value.real,
            "value_im": None if self.value is None else self.value.imag,
            "condition": self.condition_estimate,
            "reliable": self.reliable,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CorrelationValue":
        keys = {"log_modulus", "phase_re", "phase_im", "value_re", "value_im",
                "condition", "reliable"}
        if set(doc) != keys:
            raise ConfigurationError(
                f"correlation value: expected fields {sorted(keys)}, got {sorted(doc)}"
            )
        value = None
        if doc["value_re"] is not None:
            value = complex(doc["value_re"], doc["value_im"])
        out = cls(float(doc["log_modulus"]), complex(doc["phase_re"], doc["phase_im"]),
                  value, float(doc["condition"]), math.nan)
        if out.reliable != doc["reliable"]:
            raise ConfigurationError("correlation value: 'reliable' contradicts 'condition'")
        return out


def vandermonde(points: Sequence[complex]) -> tuple[float, complex]:
    """``prod_{i<j} (p_j - p_i)`` as (log-modulus, phase)."""
    logmod, phase = 0.0, 1 + 0j
    pts = [complex(p) for p in points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[j] - pts[i]
            logmod += math.log(abs(d))
            phase *= d / abs(d)
    return logmod, phase


def _log_det(a: np.ndarray) -> tuple[float, complex, float]:
    """LU-based (log|det|, phase, reciprocal 2-norm condition)."""
    if a.size == 0:
        return 0.0, 1 + 0j, 1.0
    phase, logabs = np.linalg.slogdet(a)
    s = np.linalg.svd(a, compute_uv=False)
    rcond = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    return float(logabs), complex(phase), rcond


def _row_normalise(row: np.ndarray) -> tuple[np.ndarray, float]:
    peak = float(np.max(np.abs(row)))
    if peak == 0.0 or not math.isfinite(peak):
        return row, 0.0
    return row / peak, math.log(peak)


def _assemble(basis, args, cauchy, column_log_scales):
    n, m, l = args.matrix_size, args.M, args.L
    size = m + l
    first, last = n - m, n + l - 1
    if last > basis.max_degree:
        raise BoundsError(f"basis holds degrees up to {basis.max_degree}, need {last}")
    if column_log_scales is None:
        column_log_scales = 0.5 * basis.log_norms_sq[first : last + 1]
    col = np.asarray(column_log_scales, dtype=float)
    if col.shape != (size,):
        raise ConfigurationError("column_log_scales must have one entry per column")
    col_factor = np.exp(-col)

    a = np.empty((size, size), dtype=complex)
    row_logs = np.zeros(size)
    for i, eps in enumerate(args.epsilons):
        h = cauchy.values(eps, last)[first:]
        a[i], row_logs[i] = _row_normalise(h * col_factor)
    if l:
        mus = np.asarray(args.mus, dtype=complex)
        mant, logs = eval_scaled_all(basis, last, mus)
        mant, logs = mant[first:], logs[first:]
        for r in range(l):
            common = float(np.max(logs[:, r]))
            row = mant[:, r] * np.exp(logs[:, r] - common - col)
            a[m + r], norm = _row_normalise(row)
            row_logs[m + r] = common + norm
    return a, float(row_logs.sum() + col.sum())


def _ratio_average(basis, args, cauchy, column_log_scales=None) -> CorrelationValue:
    n, m = args.matrix_size, args.M
    if m + args.L == 0:
        return CorrelationValue.from_parts(0.0, 1 + 0j, 1.0, 0.0)
    a, scale_log = _assemble(basis, args, cauchy, column_log_scales)
    det_log, det_phase, rcond = _log_det(a)

    # prod_{j=N-M}^{N-1} gamma_j, gamma_j = -2 pi i / c_j^2
    gamma_log = sum(math.log(2.0 * math.pi) - basis.log_norms_sq[j] for j in range(n - m, n))
    gamma_phase = (-1j) ** m
    mu_log, mu_phase = vandermonde(args.mus)
    eps_log, eps_phase = vandermonde(args.epsilons)
    # the eps Vandermonde enters with the opposite orientation, prod_{i<j}(eps_i - eps_j)
    orient = (-1) ** (m * (m - 1) // 2)

    prefactor_log = scale_log + gamma_log - mu_log - eps_log
    if det_log == -math.inf:
        return CorrelationValue.from_parts(-math.inf, 1 + 0j, rcond, prefactor_log)
    log_modulus = det_log + prefactor_log
    phase = det_phase * gamma_phase * orient / (mu_phase * eps_phase)
    return CorrelationValue.from_parts(log_modulus, phase / abs(phase), rcond, prefactor_log)


def _basis_size(basis: OrthoBasis, n: int):
    if basis.potential is not None and basis.potential.matrix_size != n:
        raise ConfigurationError(
            f"basis built for N={basis.potential.matrix_size}, arguments have N={n}"
        )


def avg_product(basis: OrthoBasis, mus: Sequence[complex]) -> CorrelationValue:
    """``< prod_l det(mu_l - H) > = det[pi_{N+j-1}(mu_i)] / Vandermonde(mu)``."""
    args = SpectralArguments((), tuple(mus), basis.matrix_size)
    return _ratio_average(basis, args, cauchy=None)


def avg_inverse(basis: OrthoBasis, epsilon: complex, rule: QuadratureRule) -> CorrelationValue:
    """``< 1 / det(eps - H) > = gamma_{N-1} h_{N-1}(eps)``."""
    eps = check_epsilon(epsilon)
    n = basis.matrix_size
    k = n - 1
    basis.check_index(k)
    h = transformer(basis, rule)(k, eps)
    gamma_log = math.log(2.0 * math.pi) - basis.log_norms_sq[k]
    value = -1j * h  # phase of gamma_k times h
    if value == 0:
        return CorrelationValue.from_parts(-math.inf, 1 + 0j, 1.0, gamma_log)
    log_modulus = gamma_log + math.log(abs(value))
    return CorrelationValue.from_parts(log_modulus, value / abs(value), 1.0, gamma_log)


def correlation_general(
    basis: OrthoBasis,
    args: SpectralArguments,
    rule: Optional[QuadratureRule] = None,
    column_log_scales: Optional[Sequence[float]] = None,
    cauchy: Optional[CauchyTransformer] = None,
) -> CorrelationValue:
    """General ratio average K_N(eps, mu).

    ``column_log_scales`` overrides the default column scaling log(c_k);
    any choice gives the same result up to rounding.
    """
    _basis_size(basis, args.matrix_size)
    if args.M and cauchy is None:
        if rule is None:
            raise ConfigurationError("a quadrature rule is needed when epsilons are present")
        cauchy = transformer(basis, rule)
    return _ratio_average(basis, args, cauchy, column_log_scales)
