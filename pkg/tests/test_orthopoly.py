import math

import mpmath
import numpy as np
import pytest

from charpoly import (
    BoundsError,
    NumericError,
    OrthoBasis,
    Potential,
    build_quadrature,
    eval_monic,
    gamma_coeff,
    gaussian_basis,
    integrate,
    stieltjes_recurrence,
)
from charpoly.orthopoly import eval_monic_all, eval_orthonormal_all, eval_scaled, eval_scaled_all


def hankel_recurrence(moment, kmax, dps=60):
    """Recurrence coefficients by Gram-Schmidt on monomials in high precision,
    from the moment sequence alone (no quadrature rule involved)."""
    with mpmath.workdps(dps):
        m = [moment(j) for j in range(2 * kmax + 2)]

        def inner(p, q):
            prod = [mpmath.mpf(0)] * (len(p) + len(q) - 1)
            for i, a in enumerate(p):
                for j, b in enumerate(q):
                    prod[i + j] += a * b
            return sum(c * m[i] for i, c in enumerate(prod))

        polys, norms, alphas = [[mpmath.mpf(1)]], [], []
        for k in range(kmax + 1):
            p = polys[-1]
            nk = inner(p, p)
            xp = [mpmath.mpf(0)] + p
            alphas.append(inner(xp, p) / nk)
            norms.append(nk)
            nxt = [c for c in xp]
            for j, a in enumerate(p):
                nxt[j] -= alphas[-1] * a
            if k:
                b = nk / norms[-2]
                for j, a in enumerate(polys[-2]):
                    nxt[j] -= b * a
            polys.append(nxt)
        betas = [norms[k] / norms[k - 1] for k in range(1, kmax + 1)]
        return [float(a) for a in alphas], [float(b) for b in betas], float(norms[0])


def gaussian_moment(n):
    def moment(j):
        if j % 2:
            return mpmath.mpf(0)
        return mpmath.sqrt(2 * mpmath.pi / n) * mpmath.fac2(j - 1) / mpmath.mpf(n) ** (j // 2)
    return moment


@pytest.mark.parametrize("n", [1, 3, 10])
def test_gaussian_closed_form_matches_high_precision_oracle(n):
    alphas, betas, mass = hankel_recurrence(gaussian_moment(n), 12)
    assert np.allclose(alphas, 0, atol=1e-30)
    assert np.allclose(betas, np.arange(1, 13) / n, rtol=1e-14)
    basis = gaussian_basis(n, 12)
    assert np.allclose(basis.beta[1:], betas, rtol=1e-14)
    assert basis.norms_sq[0] == pytest.approx(mass, rel=1e-15)


def test_quartic_stieltjes_matches_high_precision_oracle():
    pot = Potential.polynomial([0, 0, 0.5, 0, 0.25], 3)

    def moment(j):
        if j % 2:
            return mpmath.mpf(0)
        f = lambda x: x**j * mpmath.exp(-3 * (x**2 / 2 + x**4 / 4))
        return 2 * mpmath.quad(f, [0, 2, 4, mpmath.inf])

    alphas, betas, mass = hankel_recurrence(moment, 8, dps=50)
    basis = stieltjes_recurrence(build_quadrature(pot, max_degree=8), max_degree=8)
    assert basis.norms_sq[0] == pytest.approx(mass, rel=1e-13)
    assert np.allclose(basis.beta[1:], betas, rtol=1e-11, atol=0)
    assert np.max(np.abs(basis.alpha)) < 1e-12


def test_stieltjes_gaussian_against_closed_form():
    n = 10
    rule = build_quadrature(Potential.gaussian(n), max_degree=30)
    basis = stieltjes_recurrence(rule, max_degree=30)
    assert np.max(np.abs(basis.beta[1:] - np.arange(1, 31) / n)) < 1e-10
    assert np.max(np.abs(basis.alpha)) < 1e-12
    assert basis.norms_sq[0] == pytest.approx(math.sqrt(2 * math.pi / n), rel=1e-13)


@pytest.mark.parametrize("pot", [Potential.gaussian(10),
                                 Potential.polynomial([0, 0, 0.5, 0, 0.25], 10),
                                 Potential.polynomial([0.1, 0.4, 0.2, -0.3, 0.5], 4)])
def test_orthogonality_and_norms(pot):
    rule = build_quadrature(pot, max_degree=30)
    basis = stieltjes_recurrence(rule, max_degree=30)
    p = eval_monic_all(basis, 30, rule.nodes)
    gram = (p * rule.weights) @ p.T
    c = np.sqrt(basis.norms_sq)
    scaled = gram / np.outer(c, c)
    off = scaled - np.diag(np.diag(scaled))
    assert np.max(np.abs(off)) < 1e-10
    assert np.max(np.abs(np.diag(scaled) - 1)) < 1e-10


def test_norm_recurrence_relation():
    basis = gaussian_basis(3, 10)
    for k in range(1, 11):
        assert basis.norms_sq[k] == pytest.approx(basis.norms_sq[k - 1] * basis.beta[k], rel=1e-15)


def test_insufficient_quadrature_is_reported():
    rule = build_quadrature(Potential.gaussian(2), points_per_panel=8)
    with pytest.raises(Exception):
        stieltjes_recurrence(rule, max_degree=rule.size // 4 + 1)
    with pytest.raises(NumericError):
        OrthoBasis([0.0, 0.0], [1.0, -1.0])


def test_eval_examples():
    basis = gaussian_basis(2, 6)
    assert eval_monic(basis, 0, 3.7 + 1j) == 1
    assert eval_monic(basis, 1, 0.7) == pytest.approx(0.7)
    assert eval_monic(basis, 2, 1.0) == pytest.approx(0.5)


def test_monic_leading_behaviour():
    pot = Potential.polynomial([0, 0, 0.5, 0, 0.25], 5)
    rule = build_quadrature(pot, max_degree=12)
    basis = stieltjes_recurrence(rule, max_degree=12)
    x = 1e3 * (1 + np.max(np.abs(rule.nodes)))
    for k in range(13):
        assert abs(eval_monic(basis, k, x) / x**k - 1) < 1e-6


def test_bounds():
    basis = gaussian_basis(2, 4)
    for bad in (-1, 5):
        with pytest.raises(BoundsError):
            eval_monic(basis, bad, 0.0)
        with pytest.raises(BoundsError):
            gamma_coeff(basis, bad)


def test_gamma_examples():
    basis = gaussian_basis(1, 3)
    assert gamma_coeff(basis, 0) == pytest.approx(-1j * math.sqrt(2 * math.pi), rel=1e-15)
    assert gamma_coeff(basis, 1) == pytest.approx(-2j * math.pi / math.sqrt(2 * math.pi))
    for k in range(4):
        g = gamma_coeff(basis, k)
        assert g.real == 0 and g.imag < 0


def test_scaled_evaluation_survives_overflow():
    basis = gaussian_basis(3, 200)
    x = np.array([1e4, -3e3 + 2j])
    mant, logs = eval_scaled_all(basis, 200, x)
    assert np.all(np.isfinite(mant)) and np.all(np.abs(mant) <= 1e150)
    # log|pi_200(x)| ~ 200 log|x| for |x| far beyond the support
    assert logs[200, 0] + math.log(abs(mant[200, 0])) == pytest.approx(200 * math.log(1e4), rel=1e-6)
    small = np.array([0.3, 1.1])
    ref = eval_monic_all(basis, 20, small)
    m, s = eval_scaled_all(basis, 20, small)
    assert np.allclose(m * np.exp(s), ref, rtol=1e-13)
    mk, sk = eval_scaled(basis, 150, 5e3)
    assert abs(mk) == pytest.approx(1.0) and sk > 700


def test_orthonormal_evaluation():
    basis = gaussian_basis(2, 8)
    x = np.linspace(-1, 1, 5)
    assert np.allclose(eval_orthonormal_all(basis, 8, x),
                       eval_monic_all(basis, 8, x) / np.sqrt(basis.norms_sq)[:, None])


def test_basis_json_round_trip():
    pot = Potential.polynomial([0, 0, 0.5, 0, 0.25], 4)
    basis = stieltjes_recurrence(build_quadrature(pot, max_degree=6), max_degree=6)
    back = OrthoBasis.from_json(basis.to_json())
    assert np.array_equal(back.alpha, basis.alpha) and np.array_equal(back.beta, basis.beta)
    assert back.potential == pot
