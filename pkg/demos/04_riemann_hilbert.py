"""
The Riemann-Hilbert problem, numerically
========================================

Pair pi_n with its Cauchy transform in a 2 x 2 matrix Y. Across the real
axis Y jumps by [[1, w], [0, 1]], and far away it looks like diag(z^n, z^-n).
Both statements can be checked with finite offsets; the residuals shrink
linearly in delta and in 1/|z|.
"""

import numpy as np

from charpoly import Potential, build_basis, build_quadrature
from charpoly.rh import bulk_points, jump_residual, jump_scale, normalization_residual

N, n = 2, 2
pot = Potential.gaussian(N)
rule = build_quadrature(pot, max_degree=n + 1)
basis = build_basis(pot, n + 1, rule)

pts = bulk_points(pot, 5)
for delta in (1e-3, 5e-4, 2.5e-4):
    rel = [jump_residual(basis, n, x, delta, rule) / jump_scale(basis, n, x, rule)
           for x in pts]
    print(f"delta={delta:.1e}  worst relative jump residual {max(rel):.2e}")

for radius in (1e3, 2e3, 4e3):
    print(f"|z|={radius:g}  normalisation residual "
          f"{normalization_residual(basis, n, radius, rule):.2e}")
