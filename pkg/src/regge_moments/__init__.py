"""Moments and area distribution of the Regge-calculus connection integral."""

from .closed_form import (
    AreaSquared,
    DistributionSample,
    Region,
    SingularPoint,
    branch_w,
    decay_rate,
    distribution_arcsin,
    distribution_linear,
    ki1,
    local_maxima,
    singular_points,
)
from .errors import (
    AdmissibilityError,
    CompositionError,
    DivergenceError,
    DomainError,
    InsufficientOrderError,
    OrderOverflowError,
    QuadratureError,
    ReggeMomentsError,
    SingularPointError,
)
from .group_measure import RotationVector, dr_density, i_tilde_closed, i_tilde_quadrature, measure_norm
from .quadrature import QuadratureResult, QuadratureSpec, integrate
from .series_core import (
    SeriesKind,
    TruncatedSeries,
    derivative_at_zero,
    elementary_series,
    series_add,
    series_compose,
    series_mul,
)
from .spectral_moments import (
    ModelParams,
    MomentValue,
    ProbePolynomial,
    Route,
    SingularCoefficients,
    Variant,
    factorized_moment,
    moment_of_polynomial,
    moment_scalar,
    singular_coefficients,
)

__version__ = "0.1.0"
