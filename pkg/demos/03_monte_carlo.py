"""
Monte Carlo against the exact average
=====================================

Sample GUE matrices with a fixed seed, average the ratio
det(mu - H) / det(eps - H) over them, and see how many standard errors
the estimate sits from the determinantal value.
"""

from charpoly import Potential, SpectralArguments, build_basis, build_quadrature
from charpoly import correlation_general
from charpoly.oracles import McConfig, mc_gue_sample

N = 3
pot = Potential.gaussian(N)
args = SpectralArguments(epsilons=[0.2 + 1.0j], mus=[0.5], matrix_size=N)

rule = build_quadrature(pot, max_degree=N + 2, sensitive=args.epsilons)
exact = correlation_general(build_basis(pot, N + 2, rule), args, rule).value

for samples in (10_000, 100_000):
    est = mc_gue_sample(McConfig(samples, seed=7, matrix_size=N), args, pot)
    z = abs(est.mean - exact) / est.std_error
    print(f"{samples:>7d} samples: {est.mean:.6f} +/- {est.std_error:.1e}  ({z:.2f} sigma)")
print("exact:", exact)

# same seed, same numbers
a = mc_gue_sample(McConfig(10_000, seed=7, matrix_size=N), args, pot)
b = mc_gue_sample(McConfig(10_000, seed=7, matrix_size=N), args, pot)
print("reproducible:", a.mean == b.mean)
