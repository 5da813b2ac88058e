"""Exposure-curve distributions for lower-truncated, right-censored losses."""

from .errors import (
    AccuracyError,
    DataError,
    DegenerateDistributionError,
    DomainError,
    ExpocurveError,
    FitFailureError,
    InvalidCurveError,
    UnsupportedOperationError,
)
from .exposure import (
    CensoredDistribution,
    ExposureCurve,
    MixtureWeights,
    ValidationReport,
    blend_with_identity,
    conditional_distribution,
    curve_to_distribution,
    identity_curve,
    mix_curves,
    one_inflate,
    quantile,
    sample,
    validate_exposure_curve,
)
from .families import (
    FAMILY_NAMES,
    FamilySpec,
    InnerFunction,
    censored_exponential,
    exp_linked_curve,
    exp_linked_distribution,
    get_family,
    linear_inner,
    log_linked_curve,
    log_linked_distribution,
    mbbefd_inner,
    pdf_derivative,
    power_exp_inner,
    power_log_inner,
    quad_exp_inner,
    sine_log_inner,
    unimodality_check,
)
from .fitting import (
    ComparisonTable,
    EmpiricalStats,
    FitResult,
    aic,
    compare,
    empirical_stats,
    fit,
    loglik_extended,
    loglik_standard,
)
from .claims import ClaimRecord, NormalizedSample, load_claims, save_sample, transform_claim
from .mbbefd import (
    AbParams,
    MbbefdParams,
    ShapeReport,
    classify_shape,
    from_ab,
    logistic_form_pdf,
    mbbefd_curve,
    mbbefd_distribution,
    swiss_re_params,
    to_ab,
)
from .quadrature import quadrature

__version__ = "0.1.0"
