"""
A ratio average for a quartic potential
=======================================

For V(x) = x^2/4 + x^4/4 nothing is known in closed form, so the
determinantal value is compared with direct N-fold quadrature over the
eigenvalues. Both use the same potential but different rules.
"""

from charpoly import Potential, SpectralArguments, build_basis, build_quadrature
from charpoly import correlation_general
from charpoly.oracles import brute_force_nfold

N = 3
pot = Potential.polynomial([0, 0, 0.25, 0, 0.25], N)
args = SpectralArguments(epsilons=[0.3 + 0.6j], mus=[1.1], matrix_size=N)

rule = build_quadrature(pot, max_degree=N + args.L + 1, sensitive=args.epsilons)
basis = build_basis(pot, N + args.L + 1, rule)
result = correlation_general(basis, args, rule)

# an independent, finer rule for the reference
ref_rule = build_quadrature(pot, points_per_panel=24, max_degree=N + 2)
reference = brute_force_nfold(pot, args, ref_rule)

print("determinantal:", result.value)
print("N-fold       :", reference)
print("relative gap : %.2e" % (abs(result.value - reference) / abs(reference)))
print("rcond        : %.2e" % result.condition_estimate)
