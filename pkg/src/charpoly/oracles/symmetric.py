"""Exact finite checks of the partial-fraction identity behind the formula
and of the Cauchy-Littlewood / bialternant machinery used to prove it.

Vandermonde factors here use ``prod_{i<j} (x_i - x_j)``, the orientation
for which ``det(x_i^{n-j}) / Vandermonde = 1`` and the coset sum below
reproduces the left-hand side with no extra sign.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from ..errors import ConfigurationError, DegenerateInputError, DomainError

__all__ = [
    "descending_vandermonde",
    "permutation_identity_check",
    "partitions",
    "schur_bialternant",
    "cauchy_littlewood_check",
]


def descending_vandermonde(xs: Sequence[complex]) -> complex:
    """``prod_{i<j} (x_i - x_j)``; 1 for fewer than two points."""
    out = 1.0 + 0j
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out *= xs[i] - xs[j]
    return out


def permutation_identity_check(xs: Sequence[float], eps: Sequence[complex]):
    """Both sides of the coset-sum expansion of ``prod_l eps_l^(N-M) / det(eps_l - H)``.

    The right-hand side sums over the C(N, M) ways of placing M eigenvalue
    indices in the leading block; within each block indices keep their
    natural order.

    Returns
    -------
    (lhs, rhs) : tuple of complex
    """
    xs = [float(x) for x in xs]
    eps = [complex(e) for e in eps]
    n, m = len(xs), len(eps)
    if n > 7 or m > 3 or m > n:
        raise ConfigurationError(f"need M <= N, N <= 7, M <= 3 (N={n}, M={m})")
    for i, j in itertools.combinations(range(n), 2):
        if xs[i] == xs[j]:
            raise DegenerateInputError(f"xs[{i}] and xs[{j}] coincide")
    if any(e.imag == 0.0 for e in eps):
        raise DomainError("eps must lie off the real axis")

    lhs = 1.0 + 0j
    for e in eps:
        lhs *= e ** (n - m)
        for x in xs:
            lhs /= e - x

    re_terms, im_terms = [], []
    for front in itertools.combinations(range(n), m):
        rest = [i for i in range(n) if i not in front]
        term = 1.0 + 0j
        for i in front:
            term *= xs[i] ** (n - m)
            for e in eps:
                term /= e - xs[i]
            # Vandermonde(front) Vandermonde(rest) / Vandermonde(front + rest)
            # leaves only the cross factors, front entries first
            for j in rest:
                term /= xs[i] - xs[j]
        re_terms.append(term.real)
        im_terms.append(term.imag)
    rhs = complex(math.fsum(re_terms), math.fsum(im_terms))
    return complex(lhs), complex(rhs)


def partitions(max_weight: int, max_length: int) -> Iterator[tuple]:
    """All partitions with ``|lambda| <= max_weight`` and at most
    ``max_length`` parts, the empty partition first."""

    def parts(remaining, largest, length):
        yield ()
        if length == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for tail in parts(remaining - first, first, length - 1):
                yield (first,) + tail

    yield from parts(max_weight, max_weight, max_length)


def schur_bialternant(lam: Sequence[int], xs: Sequence[float]) -> float:
    """``s_lambda(xs) = det(x_i^(lambda_j + n - j)) / prod_{i<j}(x_i - x_j)``."""
    n = len(xs)
    lam = list(lam) + [0] * (n - len(lam))
    if len(lam) > n:
        return 0.0 if any(lam[n:]) else schur_bialternant(lam[:n], xs)
    x = np.asarray(xs, dtype=float)
    exps = np.array([lam[j] + n - 1 - j for j in range(n)])
    num = np.linalg.det(x[:, None] ** exps[None, :]) if n else 1.0
    den = descending_vandermonde(list(x)).real
    return float(num / den)


def cauchy_littlewood_check(xs: Sequence[float], ys: Sequence[float], max_weight: int):
    """``prod (1 - x_i y_j)^-1`` against ``sum_lambda s_lambda(x) s_lambda(y)``
    truncated at ``|lambda| <= max_weight``.

    Returns
    -------
    (product, partial_sum) : tuple of float
    """
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if any(abs(x * y) >= 1.0 for x in xs for y in ys):
        raise DomainError("series diverges: need |x_i y_j| < 1 for all pairs")
    for name, pts in (("xs", xs), ("ys", ys)):
        if len(set(pts)) != len(pts):
            raise DegenerateInputError(f"{name} must be pairwise distinct for the bialternant")
    product = math.prod(1.0 / (1.0 - x * y) for x in xs for y in ys)
    total = 0.0
    for lam in partitions(max_weight, min(len(xs), len(ys))):
        total += schur_bialternant(lam, xs) * schur_bialternant(lam, ys)
    return product, total
