from __future__ import annotations

import math
from typing import Union

import numpy as np
from scipy.special import kve

from .errors import DomainError
from .quadrature import QuadratureSpec, integrate

ArrayLike = Union[complex, float, np.ndarray]

# exp(-41.45) ~ 1e-18: truncation point of both Ki1 representations.
KI1_TAIL_EXPONENT = 41.45

KI1_SPEC = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-12, max_subdivisions=2000)

_SCALED_SINH_THRESHOLD = 300.0


def csch(z: ArrayLike) -> np.ndarray:
    """1/sinh(z) without overflow for large |Re z|."""
    z = np.asarray(z, dtype=complex)
    flip = z.real < 0
    zz = np.where(flip, -z, z)
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        out = 2.0 * np.exp(-zz) / (-np.expm1(-2.0 * zz))
    return np.where(flip, -out, out)


def log_abs_sinh(z: ArrayLike) -> np.ndarray:
    """ln|sinh z|, switching to the exponentially scaled form when |Re z| > 300."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z.real)
    y = z.imag
    big = x > _SCALED_SINH_THRESHOLD
    xs = np.where(big, x, 0.0)
    xm = np.where(big, 0.0, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = xs - math.log(2.0) + 0.5 * np.log1p(
            -2.0 * np.cos(2.0 * y) * np.exp(-2.0 * xs) + np.exp(-4.0 * xs)
        )
        direct = 0.5 * np.log(np.sinh(xm) ** 2 + np.sin(y) ** 2)
    return np.where(big, scaled, direct)


def _check_right_half_plane(x: complex) -> None:
    if not x.real > 0:
        raise DomainError(f"Ki1 is evaluated for Re x > 0 only, got x={x}")


def ki1(x: Union[float, complex], spec: QuadratureSpec = KI1_SPEC) -> Union[float, complex]:
    """
    Integral Bessel function Ki1(x) = int_0^inf exp(-x cosh t) / cosh t dt.

    The integral is cut at cosh T = 1 + 41.45 / Re x, where the integrand has
    dropped by 1e-18 relative to its value at t = 0. A real argument returns
    a float.
    """
    real_input = isinstance(x, (int, float, np.floating)) and not isinstance(x, bool)
    xc = complex(x)
    _check_right_half_plane(xc)
    t_max = math.acosh(1.0 + KI1_TAIL_EXPONENT / xc.real)

    def integrand(t: np.ndarray) -> np.ndarray:
        ch = np.cosh(t)
        return np.exp(-xc * ch) / ch

    value = integrate(integrand, 0.0, t_max, spec).value
    return value.real if real_input else value


def ki1_k0_ray(x: Union[float, complex], spec: QuadratureSpec = KI1_SPEC) -> Union[float, complex]:
    """Ki1(x) as the integral of K0 from x to infinity along the ray of constant phase."""
    real_input = isinstance(x, (int, float, np.floating)) and not isinstance(x, bool)
    xc = complex(x)
    _check_right_half_plane(xc)
    s_max = 1.0 + KI1_TAIL_EXPONENT / xc.real

    def integrand(s: np.ndarray) -> np.ndarray:
        u = xc * s
        return kve(0, u) * np.exp(-u)

    value = xc * integrate(integrand, 1.0, s_max, spec).value
    return value.real if real_input else value


def ki1_asymptotic(x: float) -> float:
    """Leading large-x behaviour sqrt(pi/2x) exp(-x) (1 - 5/(8x))."""
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * (1.0 - 5.0 / (8.0 * x))
