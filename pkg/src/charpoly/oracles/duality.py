"""Gaussian duality checks: N x N averages against low-dimensional integrals.

For V(x) = x^2/2 every entry of the determinant has a one-dimensional
integral representation with the same degree-dependent constant
``(-i)^k sqrt(N / 2 pi)``:

    pi_k(mu)  ~ exp(N mu^2 / 2) * int_R q^k exp(-N (q^2/2 - i mu q)) dq
    h_k(eps)  ~ int_0^{s inf} q^k exp(-N (q^2/2 - i eps q)) dq,   s = sign(Im eps)

(the second integral runs from 0 towards -inf when Im eps < 0, so the
orientation supplies a minus sign). Stacking one variable per row turns the
determinant into an (M+L)-fold integral against a Vandermonde factor. The
proportionality constant depends only on (N, M, L), so the check is that
the ratio to the determinantal value is the same for every argument set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..correlators import SpectralArguments, avg_product, correlation_general, vandermonde
from ..errors import AccuracyError, CapabilityError, ConfigurationError
from ..orthopoly import gaussian_basis
from ..quadrature import Potential, QuadratureRule, build_quadrature

__all__ = [
    "DualityReport",
    "duality_check_products",
    "duality_check_general",
    "dual_integral",
]

_SELF_CONSISTENCY = 1e-8


@dataclass(frozen=True)
class DualityReport:
    lhs: tuple
    rhs: tuple
    ratios: tuple
    spread: float

    def to_json(self) -> dict:
        return {
            "ratios": [{"re": r.real, "im": r.imag} for r in self.ratios],
            "spread": self.spread,
        }


def _report(lhs, rhs) -> DualityReport:
    ratios = tuple(complex(r / l) for l, r in zip(lhs, rhs))
    spread = max(abs(r / ratios[0] - 1.0) for r in ratios)
    return DualityReport(tuple(lhs), tuple(rhs), ratios, float(spread))


def _vandermonde_tensor(slots):
    """``int prod_l g_l(q_l) * prod_{i<j}(q_j - q_i)`` over a tensor of slot rules.

    ``slots`` is a list of (nodes, weighted values) pairs, one per variable.
    """
    if not slots:
        return 1.0 + 0j
    if len(slots) == 1:
        return complex(slots[0][1].sum())
    (x0, g0), rest = slots[0], slots[1:]
    grids = np.meshgrid(*[s[0] for s in rest], indexing="ij")
    vals = np.ones(grids[0].shape, dtype=complex)
    for axis, (_, g) in enumerate(rest):
        shape = [1] * len(rest)
        shape[axis] = -1
        vals = vals * g.reshape(shape)
    inner = np.ones(grids[0].shape)
    for i in range(len(grids)):
        for j in range(i + 1, len(grids)):
            inner = inner * (grids[j] - grids[i])
    total = 0j
    for xa, ga in zip(x0, g0):
        factor = np.ones_like(inner)
        for grid in grids:
            factor = factor * (grid - xa)
        total += ga * np.sum(vals * inner * factor)
    return total


def dual_integral(args: SpectralArguments, rule: QuadratureRule) -> complex:
    """The (M+L)-fold integral for the Gaussian case, including the
    ``exp(N sum mu^2 / 2) / (Vandermonde(mu) Vandermonde(eps))`` prefactor.

    Slots are ordered (mu_1..mu_L, eps_1..eps_M); each carries the factor
    ``q^(N-M) exp(i N E q)`` with E the slot's spectral point.
    """
    pot = rule.potential
    if pot.kind != "gaussian":
        raise CapabilityError("duality relations hold for the gaussian potential only")
    n, m = args.matrix_size, args.M
    if pot.matrix_size != n:
        raise ConfigurationError("rule and arguments disagree on N")
    if m + args.L > 3:
        raise CapabilityError("tensor quadrature limited to M + L <= 3")
    x, w = rule.nodes, rule.weights
    if not np.any(np.isclose(rule.edges, 0.0, atol=0.0)):
        raise ConfigurationError("rule needs a panel edge at 0 for half-line slots")
    power = x ** (n - m)
    slots = []
    for mu in args.mus:
        slots.append((x, w * power * np.exp(1j * n * mu * x)))
    for eps in args.epsilons:
        keep = x > 0 if eps.imag > 0 else x < 0
        orient = 1.0 if eps.imag > 0 else -1.0
        xs = x[keep]
        slots.append((xs, orient * w[keep] * power[keep] * np.exp(1j * n * eps * xs)))
    integral = _vandermonde_tensor(slots)
    mu_log, mu_phase = vandermonde(args.mus)
    eps_log, eps_phase = vandermonde(args.epsilons)
    gauss = np.exp(0.5 * n * np.sum(np.square(np.asarray(args.mus, dtype=complex))))
    return complex(integral * gauss / (math.exp(mu_log + eps_log) * mu_phase * eps_phase))


def _dual_rule(n: int, degree: int, points_per_panel: int) -> QuadratureRule:
    return build_quadrature(Potential.gaussian(n), points_per_panel=points_per_panel,
                            max_degree=degree)


def _checked_integral(args, degree):
    coarse = dual_integral(args, _dual_rule(args.matrix_size, degree, 20))
    fine = dual_integral(args, _dual_rule(args.matrix_size, degree, 30))
    if abs(fine - coarse) > _SELF_CONSISTENCY * abs(fine):
        raise AccuracyError("dual integral did not converge", coarse=coarse, fine=fine)
    return fine


def duality_check_products(lambda_sets: Sequence[Sequence[float]], N: int, L: int = None
                           ) -> DualityReport:
    """Average of L characteristic polynomials against the L-fold integral,
    one ratio per set of lambda values."""
    if N > 6:
        raise CapabilityError("product duality check supports N <= 6")
    sets = [tuple(s) for s in lambda_sets]
    if L is None:
        L = len(sets[0])
    if L > 3:
        raise CapabilityError("product duality check supports L <= 3")
    if any(len(s) != L for s in sets):
        raise ConfigurationError(f"every lambda set needs exactly L={L} entries")
    basis = gaussian_basis(N, N + L)
    lhs, rhs = [], []
    for lam in sets:
        args = SpectralArguments((), lam, N)
        lhs.append(avg_product(basis, lam).value)
        rhs.append(_checked_integral(args, N + L))
    return _report(lhs, rhs)


def duality_check_general(arg_sets: Sequence[SpectralArguments]) -> DualityReport:
    """Ratio averages from the determinantal formula against the
    (M+L)-fold integral; all argument sets must share (N, M, L)."""
    arg_sets = list(arg_sets)
    if not arg_sets or not all(isinstance(a, SpectralArguments) for a in arg_sets):
        raise ConfigurationError("expected a non-empty sequence of SpectralArguments")
    shape = {(a.matrix_size, a.M, a.L) for a in arg_sets}
    if len(shape) != 1:
        raise ConfigurationError("argument sets must share N, M and L")
    n, m, l = shape.pop()
    if m + l > 3:
        raise CapabilityError("tensor quadrature limited to M + L <= 3")
    basis = gaussian_basis(n, n + l + 1)
    rule = build_quadrature(Potential.gaussian(n), max_degree=n + l + 1,
                            sensitive=[e for a in arg_sets for e in a.epsilons])
    lhs, rhs = [], []
    for args in arg_sets:
        lhs.append(correlation_general(basis, args, rule).value)
        rhs.append(_checked_integral(args, n + l))
    return _report(lhs, rhs)
