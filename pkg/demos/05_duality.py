"""
Duality: N x N averages as small integrals
==========================================

For the Gaussian weight the average of L characteristic polynomials of an
N x N matrix equals an L-fold integral, up to a constant that depends only
on N and L. Changing the spectral points must leave the ratio unchanged.
"""

from charpoly import SpectralArguments
from charpoly.oracles import duality_check_general, duality_check_products

rep = duality_check_products([(0.3, -0.8), (1.1, 0.2), (-0.5, 0.9)], N=4)
print("products, ratios:", [f"{r:.8f}" for r in rep.ratios])
print("spread: %.1e" % rep.spread)

sets = [SpectralArguments([e], [m], 3) for e, m in
        [(0.5j, 0.2), (1 - 0.7j, -0.4), (-0.3 + 1.2j, 0.8)]]
rep = duality_check_general(sets)
print("one ratio, spread: %.1e" % rep.spread)
