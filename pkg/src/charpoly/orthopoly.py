"""Monic orthogonal polynomials for exp(-N V(x)) via the three-term recurrence.

    pi_{k+1}(x) = (x - alpha_k) pi_k(x) - beta_k pi_{k-1}(x)

``beta[0]`` holds the total mass c_0^2 (Gautschi's convention), so
``norms_sq[k] = prod(beta[:k+1])``. Polynomials are never expanded in
monomials; everything goes through the recurrence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BoundsError, ConfigurationError, NumericError
from .quadrature import Potential, QuadratureRule, build_quadrature

__all__ = [
    "OrthoBasis",
    "stieltjes_recurrence",
    "gaussian_basis",
    "build_basis",
    "eval_monic",
    "eval_monic_all",
    "eval_orthonormal_all",
    "eval_scaled",
    "eval_scaled_all",
    "gamma_coeff",
]

# mantissas are renormalised once they leave [1/_BIG, _BIG]
_BIG = 1e150
_LOG_BIG = math.log(_BIG)


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    alpha: np.ndarray
    beta: np.ndarray
    potential: Optional[Potential] = None

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=float)
        beta = np.array(self.beta, dtype=float)
        if alpha.shape != beta.shape or alpha.ndim != 1 or alpha.size == 0:
            raise ConfigurationError("alpha and beta must be 1-d of equal length")
        if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(beta))):
            raise NumericError("recurrence coefficients must be finite")
        if np.any(beta <= 0):
            raise NumericError("recurrence couplings must be positive")
        alpha.setflags(write=False)
        beta.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        norms = np.cumprod(beta)
        log_norms = np.cumsum(np.log(beta))
        norms.setflags(write=False)
        log_norms.setflags(write=False)
        object.__setattr__(self, "norms_sq", norms)
        object.__setattr__(self, "log_norms_sq", log_norms)

    @property
    def max_degree(self) -> int:
        return self.alpha.size - 1

    @property
    def matrix_size(self) -> int:
        if self.potential is None:
            raise ConfigurationError("basis carries no potential")
        return self.potential.matrix_size

    def check_index(self, k: int) -> int:
        if not 0 <= k <= self.max_degree:
            raise BoundsError(f"degree {k} outside 0..{self.max_degree}")
        return int(k)

    def to_json(self) -> dict:
        doc = {
            "alpha": self.alpha.tolist(),
            "beta": self.beta[1:].tolist(),
            "norms_sq": self.norms_sq.tolist(),
            "matrix_size": None if self.potential is None else self.potential.matrix_size,
        }
        if self.potential is not None:
            doc["potential"] = self.potential.to_json()
        return doc

    @classmethod
    def from_json(cls, doc) -> "OrthoBasis":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        extra = set(doc) - {"alpha", "beta", "norms_sq", "matrix_size", "potential"}
        if extra:
            raise ConfigurationError(f"basis: unknown field(s) {sorted(extra)}")
        try:
            alpha, beta, norms = doc["alpha"], doc["beta"], doc["norms_sq"]
        except KeyError as exc:
            raise ConfigurationError(f"basis.{exc.args[0]}: missing") from None
        potential = None
        if doc.get("potential") is not None:
            potential = Potential.from_json(doc["potential"])
            if doc.get("matrix_size") not in (None, potential.matrix_size):
                raise ConfigurationError("basis.matrix_size: disagrees with potential")
        return cls(np.asarray(alpha), np.concatenate([[norms[0]], beta]), potential)


def stieltjes_recurrence(
    rule: QuadratureRule, potential: Optional[Potential] = None, max_degree: int = 0
) -> OrthoBasis:
    """Discretised Stieltjes procedure on the rule's nodes and weights.

    Works with orthonormal vectors at the nodes so nothing overflows;
    the monic couplings come out as squared norms of the updates.
    """
    potential = rule.potential if potential is None else potential
    if potential != rule.potential:
        raise ConfigurationError("rule was built for a different potential")
    if max_degree < 0 or max_degree > rule.size // 4:
        raise ConfigurationError(
            f"max_degree {max_degree} exceeds node budget {rule.size // 4}"
        )
    x = rule.nodes
    w = rule.weights
    alpha = np.empty(max_degree + 1)
    beta = np.empty(max_degree + 1)
    beta[0] = w.sum()
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(beta[0]))
    for k in range(max_degree + 1):
        alpha[k] = np.dot(w, x * p * p)
        if k == max_degree:
            break
        v = (x - alpha[k]) * p - math.sqrt(beta[k]) * p_prev if k else (x - alpha[k]) * p
        # one reorthogonalisation pass against the two previous vectors
        v -= np.dot(w, v * p) * p
        if k:
            v -= np.dot(w, v * p_prev) * p_prev
        b = np.dot(w, v * v)
        if not math.isfinite(b) or b <= 0.0:
            raise NumericError(
                f"quadrature insufficient for requested degree (beta_{k + 1}={b!r})"
            )
        beta[k + 1] = b
        p_prev, p = p, v / math.sqrt(b)
    if not np.all(np.isfinite(alpha)):
        raise NumericError("quadrature insufficient for requested degree")
    return OrthoBasis(alpha, beta, potential)


def gaussian_basis(matrix_size: int, max_degree: int) -> OrthoBasis:
    """Closed form for V(x)=x^2/2: alpha_k = 0, beta_k = k/N."""
    n = matrix_size
    k = np.arange(max_degree + 1, dtype=float)
    beta = k / n
    beta[0] = math.sqrt(2.0 * math.pi / n)
    return OrthoBasis(np.zeros(max_degree + 1), beta, Potential.gaussian(n))


def build_basis(
    potential: Potential,
    max_degree: int,
    rule: Optional[QuadratureRule] = None,
    analytic: bool = True,
) -> OrthoBasis:
    """Gaussian potentials use the closed form unless ``analytic=False``."""
    if potential.kind == "gaussian" and analytic:
        return gaussian_basis(potential.matrix_size, max_degree)
    if rule is None:
        rule = build_quadrature(potential, max_degree=max_degree)
    return stieltjes_recurrence(rule, potential, max_degree)


def eval_monic_all(basis: OrthoBasis, kmax: int, x) -> np.ndarray:
    """``pi_0(x) .. pi_kmax(x)`` stacked along the first axis."""
    basis.check_index(kmax)
    x = np.asarray(x)
    dtype = np.result_type(x.dtype, float)
    out = np.empty((kmax + 1,) + x.shape, dtype=dtype)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = x - basis.alpha[0]
    for k in range(1, kmax):
        out[k + 1] = (x - basis.alpha[k]) * out[k] - basis.beta[k] * out[k - 1]
    return out


def eval_monic(basis: OrthoBasis, k: int, x):
    """Monic ``pi_k(x)`` for real or complex ``x``."""
    k = basis.check_index(k)
    vals = eval_monic_all(basis, k, x)[k]
    return vals[()] if np.ndim(vals) == 0 else vals


def eval_orthonormal_all(basis: OrthoBasis, kmax: int, x) -> np.ndarray:
    """``pi_k(x) / c_k`` for k = 0..kmax, by the normalised recurrence."""
    basis.check_index(kmax)
    x = np.asarray(x)
    dtype = np.result_type(x.dtype, float)
    sb = np.sqrt(basis.beta)
    out = np.empty((kmax + 1,) + x.shape, dtype=dtype)
    out[0] = 1.0 / sb[0]
    if kmax >= 1:
        out[1] = (x - basis.alpha[0]) * out[0] / sb[1]
    for k in range(1, kmax):
        out[k + 1] = ((x - basis.alpha[k]) * out[k] - sb[k] * out[k - 1]) / sb[k + 1]
    return out


def eval_scaled_all(basis: OrthoBasis, kmax: int, x, normalized: bool = False):
    """Overflow-safe recurrence.

    Returns ``(mantissa, log_scale)`` with shapes ``(kmax+1,) + x.shape``;
    ``pi_k(x) = mantissa[k] * exp(log_scale[k])`` (divided by ``c_k`` when
    ``normalized``). Mantissas stay within [1e-150, 1e150] unless the value
    itself is zero.
    """
    basis.check_index(kmax)
    x = np.asarray(x, dtype=complex)
    shape = (kmax + 1,) + x.shape
    mant = np.empty(shape, dtype=complex)
    logs = np.zeros(shape)
    if normalized:
        sb = np.sqrt(basis.beta)
        c1, c2 = lambda k: sb[k + 1], lambda k: sb[k]
        p0 = 1.0 / sb[0]
    else:
        c1, c2 = lambda k: 1.0, lambda k: basis.beta[k]
        p0 = 1.0
    cur = np.full(x.shape, p0, dtype=complex)
    prev = np.zeros(x.shape, dtype=complex)
    scale = np.zeros(x.shape)
    mant[0], logs[0] = cur, scale
    for k in range(kmax):
        nxt = ((x - basis.alpha[k]) * cur - (c2(k) * prev if k else 0.0)) / c1(k)
        prev, cur = cur, nxt
        mag = np.abs(cur)
        big = (mag > _BIG) | ((mag < 1.0 / _BIG) & (mag > 0))
        if np.any(big):
            shift = np.where(big, np.log(np.where(mag > 0, mag, 1.0)), 0.0)
            cur = cur * np.exp(-shift)
            prev = prev * np.exp(-shift)
            scale = scale + shift
        mant[k + 1], logs[k + 1] = cur, scale
    return mant, logs


def eval_scaled(basis: OrthoBasis, k: int, x):
    """``(pi_k(x) * exp(-s), s)`` with the mantissa kept in a safe range."""
    k = basis.check_index(k)
    mant, logs = eval_scaled_all(basis, k, x)
    m, s = mant[k], logs[k]
    mag = np.abs(m)
    shift = np.where(mag > 0, np.log(np.where(mag > 0, mag, 1.0)), 0.0)
    m, s = m * np.exp(-shift), s + shift
    if np.ndim(m) == 0:
        return complex(m), float(s)
    return m, s


def gamma_coeff(basis: OrthoBasis, k: int) -> complex:
    """``gamma_k = -2 pi i / c_k^2``."""
    k = basis.check_index(k)
    return complex(0.0, -2.0 * math.pi / basis.norms_sq[k])
