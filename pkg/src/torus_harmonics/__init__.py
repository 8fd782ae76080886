"""Numerical harmonic analysis on the circle group T = [-pi, pi).

Fourier coefficients and partial sums, the classical kernels, convolution of
functions and measures, Cesaro/Abel summability, Fourier-Stieltjes analysis of
measures, Hausdorff-Young, plane geometry of numbers and the algebra l1(Z).
"""

from .analysis import (
    asymmetric_sum,
    bessel_parseval_report,
    fourier_coefficients,
    mercer_decay_check,
    riesz_fischer_synthesize,
    symmetric_partial_sum,
)
from .core import (
    AliasingError,
    CoefficientSequence,
    ContractViolation,
    GridMismatchError,
    NamedClosedForm,
    PiecewiseConstant,
    SampledGrid,
    Tolerance,
    TorusError,
    TorusFunction,
    TorusGrid,
    TorusMeasure,
    TrigPolynomial,
    character,
    constant,
    geometric_pole,
    indicator,
    lp_norm,
    lq_sequence_norm,
    sign_function,
)
from .kernels import KernelSpec, dirichlet, fejer, lebesgue_constant, poisson
from .l1algebra import L1Sequence, l1_convolve, l1_power, wiener_inverse

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "CoefficientSequence",
    "ContractViolation",
    "GridMismatchError",
    "KernelSpec",
    "L1Sequence",
    "NamedClosedForm",
    "PiecewiseConstant",
    "SampledGrid",
    "Tolerance",
    "TorusError",
    "TorusFunction",
    "TorusGrid",
    "TorusMeasure",
    "TrigPolynomial",
    "asymmetric_sum",
    "bessel_parseval_report",
    "character",
    "constant",
    "dirichlet",
    "fejer",
    "fourier_coefficients",
    "geometric_pole",
    "indicator",
    "l1_convolve",
    "l1_power",
    "lebesgue_constant",
    "lp_norm",
    "lq_sequence_norm",
    "mercer_decay_check",
    "poisson",
    "riesz_fischer_synthesize",
    "sign_function",
    "symmetric_partial_sum",
    "wiener_inverse",
]
