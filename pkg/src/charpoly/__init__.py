"""Averages of characteristic polynomials and their ratios in unitary-invariant
(beta = 2) random matrix ensembles with weight exp(-N V(x)).

The main entry point is :func:`correlation_general`, which evaluates

    < prod_l det(mu_l - H) / prod_k det(eps_k - H) >

as a small determinant built from monic orthogonal polynomials and their
Cauchy transforms. Independent checks live in :mod:`charpoly.oracles`.
"""

from .cauchy import CauchyQuery, CauchyTransformer, CauchyValue, cauchy_transform, tilde_pi
from .correlators import (
    CorrelationValue,
    SpectralArguments,
    avg_inverse,
    avg_product,
    correlation_general,
    vandermonde,
)
from .errors import (
    AccuracyError,
    BoundsError,
    CapabilityError,
    CharpolyError,
    ConfigurationError,
    DegenerateInputError,
    DomainError,
    NumericError,
)
from .orthopoly import (
    OrthoBasis,
    build_basis,
    eval_monic,
    eval_monic_all,
    gamma_coeff,
    gaussian_basis,
    stieltjes_recurrence,
)
from .quadrature import Potential, QuadratureRule, build_quadrature, integrate, refine_near
from .rh import RhSample, Y, jump_residual, normalization_residual

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BoundsError",
    "CapabilityError",
    "CauchyQuery",
    "CauchyTransformer",
    "CauchyValue",
    "CharpolyError",
    "ConfigurationError",
    "CorrelationValue",
    "DegenerateInputError",
    "DomainError",
    "NumericError",
    "OrthoBasis",
    "Potential",
    "QuadratureRule",
    "RhSample",
    "SpectralArguments",
    "Y",
    "avg_inverse",
    "avg_product",
    "build_basis",
    "build_quadrature",
    "cauchy_transform",
    "correlation_general",
    "eval_monic",
    "eval_monic_all",
    "gamma_coeff",
    "gaussian_basis",
    "integrate",
    "jump_residual",
    "normalization_residual",
    "refine_near",
    "stieltjes_recurrence",
    "tilde_pi",
    "vandermonde",
]
