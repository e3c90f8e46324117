"""
Products of characteristic polynomials in the Gaussian ensemble
===============================================================

The average of det(mu - H) over N x N GUE matrices (weight exp(-N x^2/2))
is the monic Hermite polynomial pi_N(mu). With two factors it becomes a
2 x 2 determinant of neighbouring polynomials divided by mu_2 - mu_1.
"""

import numpy as np

from charpoly import avg_product, eval_monic, gaussian_basis

N = 4
basis = gaussian_basis(N, N + 3)

# recurrence coefficients of the scaled Hermite family are k / N
print("beta_k:", basis.beta[1:N + 1])

# one factor: the average is just the polynomial
for mu in (0.3, 1.1, 2.0):
    print(f"<det({mu} - H)> = {avg_product(basis, [mu]).value.real:+.10f}"
          f"   pi_N = {eval_monic(basis, N, mu).real:+.10f}")

# two factors, compared with the explicit 2 x 2 formula
mu1, mu2 = 0.4, -1.2
p = [eval_monic(basis, k, m) for m in (mu1, mu2) for k in (N, N + 1)]
explicit = (p[0] * p[3] - p[1] * p[2]) / (mu2 - mu1)
print("two factors:", avg_product(basis, [mu1, mu2]).value, explicit)
