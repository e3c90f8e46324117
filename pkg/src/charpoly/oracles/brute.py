"""Direct N-fold quadrature of the defining ensemble average.

The tensor sum over all node tuples is contracted pairwise, which gives
exactly the same number as enumerating nodes**N points but costs a few
matrix products.
"""

from __future__ import annotations

import numpy as np

from ..errors import CapabilityError, ConfigurationError
from ..quadrature import Potential, QuadratureRule

__all__ = ["brute_force_nfold", "tensor_sum", "MAX_BRUTE_N"]

MAX_BRUTE_N = 4


def tensor_sum(f: np.ndarray, nodes: np.ndarray, n: int) -> complex:
    """``sum over i_1..i_n of prod_j f[i_j] * Vandermonde(x_i)^2``."""
    f = np.asarray(f)
    d2 = (nodes[:, None] - nodes[None, :]) ** 2
    if n == 0:
        return 1.0
    if n == 1:
        return f.sum()
    if n == 2:
        return f @ d2 @ f
    if n == 3:
        u = d2 * f[None, :]  # u[a, b] = d2[a, b] f[b]
        inner = np.einsum("ab,bc,ac->a", u, d2, u)
        return np.dot(f, inner)
    if n == 4:
        total = 0.0
        for a in range(nodes.size):
            ua = f * d2[a]
            # t[b, c] = sum_d d2[b, d] ua[d] d2[d, c]; real products kept real
            if np.iscomplexobj(ua):
                t = (d2 * ua.real) @ d2 + 1j * ((d2 * ua.imag) @ d2)
            else:
                t = (d2 * ua) @ d2
            total = total + f[a] * (ua @ (d2 * t) @ ua)
        return total
    raise CapabilityError(f"tensor quadrature supports N <= {MAX_BRUTE_N}, got {n}")


def brute_force_nfold(potential: Potential, args, rule: QuadratureRule) -> complex:
    """``< prod_l det(mu_l - H) / prod_k det(eps_k - H) >`` by N-fold quadrature.

    The normalisation Z_N comes from the same rule with the ratio factor
    removed, so the rule's own error largely cancels.
    """
    n = args.matrix_size
    if n > MAX_BRUTE_N:
        raise CapabilityError(f"brute force needs N <= {MAX_BRUTE_N}, got N={n}")
    if potential != rule.potential:
        raise ConfigurationError("rule was built for a different potential")
    if potential.matrix_size != n:
        raise ConfigurationError("potential and arguments disagree on N")
    x = rule.nodes
    ratio = np.ones(x.size, dtype=complex)
    for mu in args.mus:
        ratio *= mu - x
    for eps in args.epsilons:
        ratio /= eps - x
    w = rule.weights
    num = tensor_sum(w * ratio, x, n)
    den = tensor_sum(w, x, n)
    return complex(num / den)
