"""Bernstein and Bernstein-Durrmeyer operators on [0, 1], with numerical
checks of their behaviour in variation."""

from .basis import (
    basis_derivative,
    basis_eval,
    basis_eval_all,
    basis_integral,
    basis_matrix,
    basis_product_integral,
    central_moment,
    moment_table,
    sum_moment,
)
from .corpus import TestFunction, corpus_default, lookup
from .errors import (
    BernvarError,
    ConvergenceError,
    DomainError,
    IntegrationError,
    NonFiniteValueError,
    SingularRepresentationError,
    UndefinedRatioError,
    UnsupportedOrderError,
)
from .operators import (
    BernsteinPoly,
    DurrmeyerCoefficients,
    bernstein_apply,
    durrmeyer_apply,
    durrmeyer_apply_exact,
    durrmeyer_coefficients,
    durrmeyer_coefficients_exact,
    durrmeyer_derivative_a,
    durrmeyer_derivative_b,
)
from .quadrature import Panelization, QuadratureRule, gauss_legendre, integrate, l1_norm
from .variation import (
    VariationResult,
    bv_norm,
    tv_seminorm_ac,
    variation_bernstein_exact,
    variation_partition,
)

__version__ = "0.1.0"
