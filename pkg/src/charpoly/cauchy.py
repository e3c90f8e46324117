"""Cauchy transforms of the monic orthogonal polynomials,

    h_k(eps) = 1/(2 pi i) * int pi_k(x) exp(-N V(x)) / (x - eps) dx,   Im eps != 0.

Three evaluation regimes share one quadrature rule:

* near the real axis the pole is subtracted and integrated in closed form;
* outside the truncated support the first k terms of the geometric
  expansion of 1/(x - eps) are dropped (they vanish by orthogonality),
  which removes the cancellation that makes h_k ~ eps^-(k+1) unreachable;
* otherwise the sum is taken directly.

Each value is computed on the base rule and on a rule refined around
Re eps; the refined value is returned and their difference is the error
estimate.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError
from .orthopoly import OrthoBasis, eval_monic_all
from .quadrature import QuadratureRule, refine_near

__all__ = [
    "CauchyQuery",
    "CauchyValue",
    "CauchyTransformer",
    "check_epsilon",
    "cauchy_transform",
    "transformer",
    "tilde_pi",
]

NEAR_AXIS = 1e-8
_TWO_PI_I = 2j * math.pi
_EPS = np.finfo(float).eps


def check_epsilon(eps) -> complex:
    """Reject points on (or numerically on) the real axis."""
    eps = complex(eps)
    if not (math.isfinite(eps.real) and math.isfinite(eps.imag)):
        raise DomainError("epsilon must be finite")
    if abs(eps.imag) < NEAR_AXIS * (1.0 + abs(eps.real)):
        raise DomainError(f"Im(epsilon) must be nonzero (got {eps!r})")
    return eps


@dataclass(frozen=True)
class CauchyQuery:
    epsilon: complex
    degree: int
    basis: OrthoBasis

    def __post_init__(self):
        object.__setattr__(self, "epsilon", check_epsilon(self.epsilon))
        self.basis.check_index(self.degree)


@dataclass(frozen=True)
class CauchyValue:
    value: complex
    estimated_error: float
    refinement_level: int


def _regime(rule: QuadratureRule, eps: complex) -> str:
    lo, hi = rule.edges[0], rule.edges[-1]
    widest = float(np.max(np.diff(rule.edges)))
    if abs(eps.imag) < widest and lo < eps.real < hi:
        return "near"
    if abs(eps) > max(abs(lo), abs(hi)):
        return "far"
    return "direct"


def _sums(basis: OrthoBasis, rule: QuadratureRule, kmax: int, eps: complex, regime: str):
    """h_0..h_kmax on one rule, plus the round-off scale of each sum."""
    x = rule.nodes
    p = eval_monic_all(basis, kmax, x)
    lo, hi = rule.edges[0], rule.edges[-1]
    if regime == "near":
        pot = rule.potential
        f_nodes = p * rule.density
        f_eps = eval_monic_all(basis, kmax, eps) * pot.weight(eps)
        diff = (f_nodes - f_eps[:, None]) / (x - eps)
        log_term = np.log(hi - eps) - np.log(lo - eps)
        terms = diff * rule.gl_weights
        vals = terms.sum(axis=1) + f_eps * log_term
        scale = np.abs(terms).sum(axis=1) + np.abs(f_eps * log_term)
    elif regime == "far":
        k = np.arange(kmax + 1)[:, None]
        ratio = x / eps
        terms = p * ratio**k * (rule.weights / (x - eps))
        vals = terms.sum(axis=1)
        scale = np.abs(terms).sum(axis=1)
    else:
        terms = p * (rule.weights / (x - eps))
        vals = terms.sum(axis=1)
        scale = np.abs(terms).sum(axis=1)
    return vals / _TWO_PI_I, scale / (2.0 * math.pi)


def _refined_rule(rule: QuadratureRule, eps: complex) -> QuadratureRule:
    fine = refine_near(rule, eps)
    if fine is rule:
        fine = refine_near(rule, complex(0.0, 10.0 * rule.truncation_radius), factor=2)
    return fine


class CauchyTransformer:
    """Memoised h_k(eps) for one (basis, rule) pair.

    Cache keys are the exact bit patterns of eps. Insertion is guarded by
    a lock; values are deterministic, so concurrent callers agree.
    """

    def __init__(self, basis: OrthoBasis, rule: QuadratureRule, rtol: float = 1e-8,
                 max_levels: int = 3):
        if basis.potential is not None and basis.potential != rule.potential:
            raise DomainError("basis and rule belong to different potentials")
        self.basis = basis
        self.rule = rule
        self.rtol = rtol
        self.max_levels = max_levels
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _compute(self, eps: complex, kmax: int):
        regime = _regime(self.rule, eps)
        coarse, _ = _sums(self.basis, self.rule, kmax, eps, regime)
        rule = self.rule
        for level in range(1, self.max_levels + 1):
            rule = _refined_rule(rule, eps)
            fine, scale = _sums(self.basis, rule, kmax, eps, regime)
            err = np.abs(fine - coarse)
            allowed = self.rtol * np.abs(fine) + 64 * _EPS * scale
            if np.all(err <= allowed):
                return fine, err, level
            coarse = fine
        bad = int(np.argmax(err - allowed))
        raise AccuracyError(
            f"Cauchy transform h_{bad}({eps!r}) did not converge "
            f"(estimated error {err[bad]:.3g})",
            coarse=complex(coarse[bad]),
            fine=complex(fine[bad]),
        )

    def evaluate(self, eps, kmax: int):
        """``(values, errors, level)`` for h_0..h_kmax at eps."""
        eps = check_epsilon(eps)
        self.basis.check_index(kmax)
        key = (eps.real.hex(), eps.imag.hex())
        with self._lock:
            hit = self._cache.get(key)
        if hit is None or hit[0].size <= kmax:
            hit = self._compute(eps, max(kmax, 0 if hit is None else hit[0].size - 1))
            with self._lock:
                self._cache[key] = hit
        vals, errs, level = hit
        return vals[: kmax + 1], errs[: kmax + 1], level

    def values(self, eps, kmax: int) -> np.ndarray:
        return self.evaluate(eps, kmax)[0]

    def __call__(self, k: int, eps) -> complex:
        return complex(self.values(eps, k)[k])


@functools.lru_cache(maxsize=32)
def transformer(basis: OrthoBasis, rule: QuadratureRule) -> CauchyTransformer:
    """Shared transformer per (basis, rule), so repeated calls reuse the cache."""
    return CauchyTransformer(basis, rule)


def cauchy_transform(query: CauchyQuery, rule: QuadratureRule) -> CauchyValue:
    vals, errs, level = transformer(query.basis, rule).evaluate(query.epsilon, query.degree)
    k = query.degree
    return CauchyValue(complex(vals[k]), float(errs[k]), level)


def tilde_pi(basis: OrthoBasis, k: int, epsilon, M: int, rule: QuadratureRule) -> complex:
    """Direct quadrature of ``int exp(-N V) x^(N-M) pi_k(x) / (eps - x) dx``.

    For ``k >= N - M`` this equals ``-2 pi i eps^(N-M) h_k(eps)``.
    """
    eps = check_epsilon(epsilon)
    basis.check_index(k)
    power = basis.matrix_size - M
    if power < 0:
        raise DomainError("need M <= N")
    fine = refine_near(rule, eps)
    x = fine.nodes
    pk = eval_monic_all(basis, k, x)[k]
    return complex(np.sum(fine.weights * x**power * pk / (eps - x)))
