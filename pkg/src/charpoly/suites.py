"""Verification suites run by ``charpoly verify``.

Each suite returns a list of check records ``{name, status, residual,
threshold}`` with status ``pass``, ``fail`` or ``skipped``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .correlators import SpectralArguments, correlation_general
from .errors import CapabilityError, ConfigurationError
from .oracles import (
    MAX_BRUTE_N,
    brute_force_nfold,
    duality_check_general,
    duality_check_products,
    permutation_identity_check,
)
from .orthopoly import OrthoBasis, build_basis
from .quadrature import Potential, QuadratureRule, build_quadrature
from .rh import bulk_points, jump_residual, jump_scale, normalization_residual

__all__ = ["SUITES", "run_suite", "jittered_points", "identity_suite", "oracle_suite",
           "duality_suite", "rh_suite"]

SUITES = ("identity", "oracle", "duality", "rh", "all")

IDENTITY_TOL = 1e-11
ORACLE_TOL = 1e-6
DUALITY_TOL = 1e-5
JUMP_TOL = 1e-3
NORMALIZATION_TOL = 1e-2
RATE_WINDOW = (1.3, 2.7)


def _record(name, residual, threshold, passed=None):
    if passed is None:
        passed = residual < threshold
    return {"name": name, "status": "pass" if passed else "fail",
            "residual": float(residual), "threshold": float(threshold)}


def _skipped(name, reason):
    return {"name": name, "status": "skipped", "residual": None, "threshold": None,
            "reason": reason}


def jittered_points(rng: np.random.Generator, n: int, spacing: float = 0.6) -> np.ndarray:
    """n real points, a shuffled grid plus jitter, with gaps of at least
    ``spacing / 2`` so no instance is a near-coincidence."""
    base = (np.arange(n) - 0.5 * (n - 1)) * spacing
    return rng.permutation(base + rng.uniform(-0.25, 0.25, n) * spacing)


def _relative(a, b):
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def identity_suite(n: int, epsilons, seed: int, instances: int = 20) -> list:
    """Coset-sum identity on random eigenvalue sets for the given epsilons."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        lhs, rhs = permutation_identity_check(jittered_points(rng, n), epsilons)
        worst = max(worst, _relative(rhs, lhs))
    return [_record(f"identity N={n} M={len(epsilons)}", worst, IDENTITY_TOL)]


def oracle_suite(potential: Potential, args: SpectralArguments, rule: QuadratureRule,
                 basis: OrthoBasis) -> list:
    if args.matrix_size > MAX_BRUTE_N:
        raise CapabilityError(f"oracle suite needs N <= {MAX_BRUTE_N}")
    value = correlation_general(basis, args, rule).value
    # an independent rule so quadrature errors do not cancel
    other = build_quadrature(potential, points_per_panel=rule.points_per_panel + 4,
                             max_degree=rule.degree)
    ref = brute_force_nfold(potential, args, other)
    return [_record(f"oracle N={args.matrix_size} M={args.M} L={args.L}",
                    _relative(value, ref), ORACLE_TOL)]


def _shifted(args: SpectralArguments, shift: float) -> SpectralArguments:
    return SpectralArguments(tuple(e + shift for e in args.epsilons),
                             tuple(m - 0.5 * shift for m in args.mus), args.matrix_size)


def duality_suite(potential: Potential, args: SpectralArguments) -> list:
    if potential.kind != "gaussian":
        raise CapabilityError("duality suite needs the gaussian potential")
    if args.M + args.L > 3 or args.M + args.L == 0:
        raise CapabilityError("duality suite needs 1 <= M + L <= 3")
    sets = [args, _shifted(args, 0.2), _shifted(args, -0.35)]
    if args.M == 0:
        report = duality_check_products([s.mus for s in sets], args.matrix_size)
    else:
        report = duality_check_general(sets)
    return [_record(f"duality N={args.matrix_size} M={args.M} L={args.L}", report.spread,
                    DUALITY_TOL)]


def rh_suite(potential: Potential, n: int, rule: QuadratureRule, basis: OrthoBasis) -> list:
    """Jump condition at 20 bulk points, normalisation at infinity, and
    first-order rates in delta and 1/radius."""
    checks = []
    pts = bulk_points(potential, 20)
    worst = max(jump_residual(basis, n, x, 1e-4, rule) / jump_scale(basis, n, x, rule)
                for x in pts)
    checks.append(_record(f"rh jump n={n} (relative to local weight)", worst, JUMP_TOL))

    x0 = float(pts[len(pts) // 2])
    rate = jump_residual(basis, n, x0, 1e-4, rule) / jump_residual(basis, n, x0, 5e-5, rule)
    checks.append(_record(f"rh jump rate n={n}", rate, RATE_WINDOW[1],
                          passed=RATE_WINDOW[0] <= rate <= RATE_WINDOW[1]))

    radius = max(1e3, 10.0 * (1.0 + rule.truncation_radius))
    r1 = normalization_residual(basis, n, radius, rule)
    r2 = normalization_residual(basis, n, 2 * radius, rule)
    checks.append(_record(f"rh normalization n={n} radius={radius:g}", r1, NORMALIZATION_TOL))
    checks.append(_record(f"rh normalization rate n={n}", r1 / r2, RATE_WINDOW[1],
                          passed=RATE_WINDOW[0] <= r1 / r2 <= RATE_WINDOW[1]))
    return checks


def run_suite(suite: str, potential: Potential, args: SpectralArguments, rule: QuadratureRule,
              basis: OrthoBasis, seed: int, rh_n: Optional[int] = None) -> list:
    """Run one named suite; ``all`` runs every suite and marks those outside
    oracle capability as skipped instead of failing the run."""
    if suite not in SUITES:
        raise ConfigurationError(f"suite: unknown value {suite!r}; choose from {SUITES}")
    n = args.matrix_size
    if rh_n is None:
        rh_n = min(3, basis.max_degree - 1)
    runners = {
        "identity": lambda: identity_suite(n, args.epsilons, seed),
        "oracle": lambda: oracle_suite(potential, args, rule, basis),
        "duality": lambda: duality_suite(potential, args),
        "rh": lambda: rh_suite(potential, rh_n, rule, basis),
    }
    if suite != "all":
        return runners[suite]()
    checks = []
    for name, run in runners.items():
        try:
            checks.extend(run())
        except CapabilityError as exc:
            checks.append(_skipped(name, str(exc)))
    return checks


def suite_degree(args: SpectralArguments, rh_n: Optional[int]) -> int:
    """Highest polynomial degree any suite needs."""
    return max(args.matrix_size + args.L + 1, (rh_n or 3) + 1)


def suite_basis(potential: Potential, degree: int, target_tol: float, ppp: int, epsilons=()):
    rule = build_quadrature(potential, points_per_panel=ppp, target_tol=target_tol,
                            max_degree=degree, sensitive=epsilons)
    return rule, build_basis(potential, degree, rule)


def passed(checks) -> bool:
    return all(c["status"] != "fail" for c in checks)
