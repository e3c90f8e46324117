"""Independent reference computations used to validate the formula path."""

from .brute import MAX_BRUTE_N, brute_force_nfold, tensor_sum
from .duality import DualityReport, dual_integral, duality_check_general, duality_check_products
from .montecarlo import McConfig, McEstimate, batch_mean, mc_gue_sample, mc_observable, sample_gue
from .symmetric import (
    cauchy_littlewood_check,
    descending_vandermonde,
    partitions,
    permutation_identity_check,
    schur_bialternant,
)

__all__ = [
    "MAX_BRUTE_N",
    "brute_force_nfold",
    "tensor_sum",
    "DualityReport",
    "dual_integral",
    "duality_check_general",
    "duality_check_products",
    "McConfig",
    "McEstimate",
    "batch_mean",
    "mc_gue_sample",
    "mc_observable",
    "sample_gue",
    "cauchy_littlewood_check",
    "descending_vandermonde",
    "partitions",
    "permutation_identity_check",
    "schur_bialternant",
]
