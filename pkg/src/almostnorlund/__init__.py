"""Almost generalized Norlund means of conjugate Fourier series.

The package computes the transforms, the conjugate function they
approximate, and empirical checks of the O(R_n^(1/r - alpha)) error rate
in the Lip(alpha, r) classes.
"""
from . import signals
from ._kernels import BACKEND
from .errors import (
    AliasingError,
    AlmostNorlundError,
    ConfigError,
    DegenerateSequenceError,
    InsufficientDataError,
    InvalidWeightError,
    NumericError,
    ParameterError,
    PVDivergenceError,
    SingularityError,
    TruncationOrderError,
    ZeroNormalizerError,
)
from .fourier import (
    FourierExpansion,
    PrincipalValueSpec,
    PVResult,
    Signal,
    conjugate_function_pv,
    conjugate_partial_sum,
    fourier_coefficients,
    partial_sum,
    psi_difference,
)
from .lipnorms import LipClassSpec, LipReport, lip_membership_estimate, norm, partial_sum_error
from .means import (
    KernelSpec,
    MethodSpec,
    almost_generalized_norlund,
    almost_mean,
    classic_method,
    conjugate_kernel,
    conjugate_norlund,
    conjugate_transform,
    generalized_norlund,
    multipliers,
)
from .verify import (
    CondIntegralSpec,
    RateReport,
    condition_integrals,
    corollary_suite,
    fit_slope,
    rate_experiment,
)
from .weights import (
    ConvolutionTable,
    VariationReport,
    WeightSequence,
    build_convolution,
    check_proof_bounds,
    check_regularity,
    classify_variation,
    parse_weights,
)

__version__ = "0.1.0"
