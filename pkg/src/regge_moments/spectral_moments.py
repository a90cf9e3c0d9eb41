from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, Field

from .errors import DomainError, OrderOverflowError
from .quadrature import DEFAULT_SPEC, QuadratureResult, QuadratureSpec, integrate
from .series_core import (
    MAX_DERIVATIVE_ORDER,
    SeriesKind,
    TruncatedSeries,
    constant_series,
    derivative_at_zero,
    elementary_series,
    variable_series,
    working_order,
)
from .special import csch, ki1

logger = logging.getLogger(__name__)

LN4 = math.log(4.0)


class Variant(str, Enum):
    ARCSIN = "arcsin"
    LINEAR = "linear"


class Route(str, Enum):
    SERIES_UNRESCALED = "series-unrescaled"
    SERIES_RESCALED = "series-rescaled"
    INTEGRAL_REP = "integral-rep"
    RADIAL_QUADRATURE = "radial-quadrature"


def available_routes(variant: Variant) -> List[Route]:
    """Routes that exist for the variant; the integral representation is arcsin only."""
    if Variant(variant) is Variant.ARCSIN:
        return [Route.SERIES_RESCALED, Route.SERIES_UNRESCALED, Route.INTEGRAL_REP, Route.RADIAL_QUADRATURE]
    return [Route.SERIES_RESCALED, Route.SERIES_UNRESCALED, Route.RADIAL_QUADRATURE]


class ModelParams(BaseModel):
    """
    Barbero-Immirzi parameter and h-variant.

    ``antiholomorphic`` selects the conjugate sector (i/gamma -> -i/gamma);
    every quantity computed there is the complex conjugate of the
    holomorphic one.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float = Field(gt=0, allow_inf_nan=False)
    variant: Variant = Variant.ARCSIN
    antiholomorphic: bool = False

    @property
    def sign(self) -> int:
        return -1 if self.antiholomorphic else 1

    @property
    def scale(self) -> complex:
        """c = 1 + i/gamma (or its conjugate)."""
        return complex(1.0, self.sign / self.gamma)

    @property
    def x0(self) -> complex:
        """First singular point 4(1 + i/gamma)^-2, written as 4 gamma^2/(gamma + i)^2."""
        g = self.gamma
        return 4.0 * g * g / complex(g, self.sign) ** 2

    def conjugate(self) -> "ModelParams":
        return self.model_copy(update={"antiholomorphic": not self.antiholomorphic})


@dataclass(frozen=True)
class MomentValue:
    l: int
    value: complex
    route: Route


@dataclass(frozen=True)
class SingularCoefficients:
    """Singular part of a moment functional: a f(x0) + b f'(x0)."""

    a: complex
    b: complex
    x0: complex

    def apply(self, value_at_x0: complex, slope_at_x0: complex) -> complex:
        return self.a * value_at_x0 + self.b * slope_at_x0


# ----------------------------------------------------------------------
# Probe polynomials in x = v^2
# ----------------------------------------------------------------------

ADMISSIBILITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProbePolynomial:
    """
    Polynomial f(x) with ascending complex coefficients, tested against ``params``.

    ``admissible`` is recomputed from the coefficients: f(x0) and f'(x0)
    must both vanish (relative to the size of the terms at x0).
    """

    coeffs: np.ndarray
    params: ModelParams
    admissible: bool = field(init=False)

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=complex).reshape(-1)
        if arr.size == 0:
            arr = np.zeros(1, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

        x0 = self.params.x0
        limit = ADMISSIBILITY_TOL * max(self.size_at(x0), 1.0)
        ok = abs(self.value_at(x0)) <= limit and abs(self.slope_at(x0)) <= limit
        object.__setattr__(self, "admissible", bool(ok))

    @classmethod
    def from_factors(
        cls,
        params: ModelParams,
        extra_roots: Sequence[complex] = (),
        leading: complex = 1.0,
    ) -> "ProbePolynomial":
        """(x - x0)^2 times prod (x - r) over ``extra_roots``, times ``leading``."""
        x0 = params.x0
        coeffs = P.polyfromroots([x0, x0, *extra_roots]) * leading
        return cls(coeffs, params)

    @classmethod
    def monomial(cls, l: int, params: ModelParams) -> "ProbePolynomial":
        coeffs = np.zeros(l + 1, dtype=complex)
        coeffs[l] = 1.0
        return cls(coeffs, params)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def size_at(self, x: complex) -> float:
        """sum |a_k| |x|^k, the scale rounding errors in f(x) are measured against."""
        return float(np.sum(np.abs(self.coeffs) * abs(x) ** np.arange(self.coeffs.size)))

    def value_at(self, x: complex) -> complex:
        return complex(P.polyval(x, self.coeffs))

    def slope_at(self, x: complex) -> complex:
        if self.coeffs.size == 1:
            return 0j
        return complex(P.polyval(x, P.polyder(self.coeffs)))

    def conjugate(self) -> "ProbePolynomial":
        return ProbePolynomial(np.conj(self.coeffs), self.params.conjugate())


# ----------------------------------------------------------------------
# Generators and prefactor
# ----------------------------------------------------------------------

def moment_prefactor(l: int, p: ModelParams) -> complex:
    """pi (-1)^l (2/c)^(2l+3) as a product of integer powers."""
    q = 2.0 / p.scale
    acc = complex(math.pi * (-1) ** l)
    for _ in range(2 * l + 3):
        acc *= q
    return acc


def rescaled_generator(variant: Variant, order: int) -> TruncatedSeries:
    """
    G(h) after h -> c h: cos h ln((1 + cos h)/2) for arcsin,
    ln((1 + sqrt(1 - h^2))/2) for linear.
    """
    ln1p = elementary_series(SeriesKind.LN1P, order)
    if Variant(variant) is Variant.ARCSIN:
        cos = elementary_series(SeriesKind.COS, order)
        return cos * ln1p((cos - 1.0) / 2.0)
    h = variable_series(order)
    root = elementary_series(SeriesKind.SQRT1M, order)(h * h)
    return ln1p((root - 1.0) / 2.0)


def unrescaled_generator(p: ModelParams, order: int) -> TruncatedSeries:
    """2 (dz/dh) ln((1 + sqrt(1 - z^2))/2) with z = sin(h/c) or z = h/c."""
    c = p.scale
    if p.variant is Variant.ARCSIN:
        t = variable_series(order, 1.0 / c)
        z = elementary_series(SeriesKind.SIN, order)(t)
        dz = elementary_series(SeriesKind.COS, order)(t) / c
    else:
        z = variable_series(order, 1.0 / c)
        dz = constant_series(1.0 / c, order)
    root = elementary_series(SeriesKind.SQRT1M, order)(z * z)
    log_half = elementary_series(SeriesKind.LN1P, order)((root - 1.0) / 2.0)
    return 2.0 * dz * log_half


@lru_cache(maxsize=None)
def _rescaled_derivative(variant: Variant, l: int, order: int) -> complex:
    return derivative_at_zero(rescaled_generator(variant, order), 2 * l + 2)


# ----------------------------------------------------------------------
# Regular-part integrals
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def table_moment_integral(n: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """I_n = int_0^inf lambda^n / ((lambda^2 + 1) sinh(pi lambda)) d lambda, n >= 1."""
    if n < 1:
        raise DomainError(f"I_n diverges at the origin for n < 1, got n={n}")

    def integrand(lam: np.ndarray) -> np.ndarray:
        return lam**n / (lam * lam + 1.0) * 2.0 * np.exp(-math.pi * lam) / (-np.expm1(-2.0 * math.pi * lam))

    return integrate(integrand, 0.0, math.inf, spec).value.real


def singular_coefficients(l: int, p: ModelParams) -> SingularCoefficients:
    """
    Coefficients of the singular part, independent of ``l``.

    With x0 = (2/c)^2 the arcsin moment splits as
        R(l) + pi (2/c)^3 (ln 4 - 2) x0^l - 2 pi (2/c)^3 x0 * l x0^(l-1),
    where R(l) = 2 pi (-1)^l (2/c)^(2l+3) I_(2l+3) is the regular part.
    The linear variant has no singular part.
    """
    if l < 0:
        raise ValueError(f"moment index must be nonnegative, got {l}")
    x0 = p.x0
    if p.variant is Variant.LINEAR:
        return SingularCoefficients(0j, 0j, x0)
    cube = (2.0 / p.scale) ** 3
    a = math.pi * cube * (LN4 - 2.0)
    b = -2.0 * math.pi * cube * x0
    return SingularCoefficients(a, b, x0)


def singular_part(f: ProbePolynomial, p: ModelParams) -> complex:
    """a f(x0) + b f'(x0); zero for the linear variant, rounding-small for admissible probes."""
    if p.variant is Variant.LINEAR:
        return 0j
    coeffs = singular_coefficients(0, p)
    return coeffs.apply(f.value_at(p.x0), f.slope_at(p.x0))


def regular_part(l: int, p: ModelParams, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """R(l) for the arcsin variant; the full moment for the linear variant."""
    if p.variant is Variant.LINEAR:
        return moment_scalar(l, p).value
    i_reg = table_moment_integral(2 * l + 3, spec)
    return 2.0 * moment_prefactor(l, p) * i_reg


# ----------------------------------------------------------------------
# Radial functionals over real v
# ----------------------------------------------------------------------

def _radial_y(v: np.ndarray, p: ModelParams) -> np.ndarray:
    # (1/gamma - i) v / 2
    return complex(1.0 / p.gamma, -1.0) * v / 2.0


def radial_functional(
    f: ProbePolynomial,
    p: ModelParams,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> QuadratureResult:
    """
    (i/2) 4 pi int_0^inf v^2 y/(y^2 + 1) csch(pi y) f(v^2) dv, y = (1/gamma - i) v/2.

    Equals the moment of ``f`` when f is admissible; for any other f the
    difference is the singular part.
    """
    if p.antiholomorphic:
        res = radial_functional(f.conjugate(), p.conjugate(), spec)
        return QuadratureResult(res.value.conjugate(), res.error, res.subdivisions)
    if not np.any(f.coeffs):
        return QuadratureResult(0j, 0.0, 0)

    coeffs = f.coeffs

    def integrand(v: np.ndarray) -> np.ndarray:
        y = _radial_y(v, p)
        fx = P.polyval(v * v, coeffs)
        return v * v * y / (y * y + 1.0) * csch(math.pi * y) * fx

    res = integrate(integrand, 0.0, math.inf, spec)
    return QuadratureResult(0.5j * 4.0 * math.pi * res.value, 2.0 * math.pi * res.error, res.subdivisions)


def linear_bessel_radial(l: int, p: ModelParams, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadratureResult:
    """4 pi int_0^inf Ki1(y)/(2 pi y) v^(2l+2) dv with y = (1/gamma - i) v/2."""
    if p.antiholomorphic:
        res = linear_bessel_radial(l, p.conjugate(), spec)
        return QuadratureResult(res.value.conjugate(), res.error, res.subdivisions)

    def integrand(v: np.ndarray) -> np.ndarray:
        y = _radial_y(v, p)
        k = np.array([ki1(complex(yy)) for yy in y], dtype=complex)
        return 2.0 * k / y * v ** (2 * l + 2)

    res = integrate(integrand, 0.0, math.inf, spec)
    logger.debug("linear radial l=%d gamma=%g: %d subdivisions", l, p.gamma, res.subdivisions)
    return res


# Ratio of the linear series moment to linear_bessel_radial, the same for every l.
LINEAR_BESSEL_NORMALIZATION = -1j


# ----------------------------------------------------------------------
# Moments
# ----------------------------------------------------------------------

def moment_scalar(
    l: int,
    p: ModelParams,
    route: Route = Route.SERIES_RESCALED,
    order: Optional[int] = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> MomentValue:
    """
    Scalar moment of v^(2l) by one of four routes.

    series-rescaled   pi (-1)^l (2/c)^(2l+3) G^(2l+2)(0)
    series-unrescaled pi (-1)^l 2^(2l+2) F^(2l+2)(0), F built with complex c
    integral-rep      G^(2l+2)(0) = 2 I_(2l+3) - (-1)^l (2l+2) + (-1)^l ln 4  (arcsin only)
    radial-quadrature radial integral of x^l plus the singular part (arcsin),
                      or -i times the Ki1 radial integral (linear)
    """
    if l < 0:
        raise ValueError(f"moment index must be nonnegative, got {l}")
    route = Route(route)
    k = 2 * l + 2
    order = working_order(l) if order is None else order
    if route in (Route.SERIES_RESCALED, Route.SERIES_UNRESCALED) and k > MAX_DERIVATIVE_ORDER:
        raise OrderOverflowError(k, MAX_DERIVATIVE_ORDER)

    if route is Route.SERIES_RESCALED:
        value = moment_prefactor(l, p) * _rescaled_derivative(p.variant, l, order)
    elif route is Route.SERIES_UNRESCALED:
        deriv = derivative_at_zero(unrescaled_generator(p, order), k)
        value = math.pi * (-1) ** l * 2.0**k * deriv
    elif route is Route.INTEGRAL_REP:
        if p.variant is not Variant.ARCSIN:
            raise DomainError("the integral representation exists for the arcsin variant only")
        sign = (-1) ** l
        g = 2.0 * table_moment_integral(2 * l + 3, spec) - sign * k + sign * LN4
        value = moment_prefactor(l, p) * g
    else:
        if p.variant is Variant.ARCSIN:
            mono = ProbePolynomial.monomial(l, p)
            value = radial_functional(mono, p, spec).value + singular_part(mono, p)
        else:
            norm = LINEAR_BESSEL_NORMALIZATION.conjugate() if p.antiholomorphic else LINEAR_BESSEL_NORMALIZATION
            value = norm * linear_bessel_radial(l, p, spec).value

    return MomentValue(l=l, value=complex(value), route=route)


def moment_of_polynomial(
    f: ProbePolynomial,
    p: Optional[ModelParams] = None,
    route: Route = Route.SERIES_RESCALED,
) -> complex:
    """Sum of a_l times the moment of v^(2l) over the coefficients of f."""
    p = f.params if p is None else p
    terms = [a * moment_scalar(l, p, route).value for l, a in enumerate(f.coeffs) if a != 0]
    return complex(sum(terms, 0j))


def factorized_moment(
    l: int,
    m: int,
    p: ModelParams,
    route: Route = Route.SERIES_RESCALED,
) -> complex:
    """Mixed moment with v^(2l) v*^(2m): 2^-3 times N(v^2l) conj(N(v^2m))."""
    left = moment_scalar(l, p, route).value
    right = moment_scalar(m, p, route).value
    return left * right.conjugate() / 8.0
