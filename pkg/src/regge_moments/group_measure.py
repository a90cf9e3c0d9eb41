from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate
from .series_core import SeriesKind, TruncatedSeries, elementary_series, variable_series

# (pi/2 - 1) / (2 pi): single holomorphic factor integrated over the unit ball.
MEASURE_NORM_EXACT = (math.pi / 2.0 - 1.0) / (2.0 * math.pi)


@dataclass(frozen=True)
class RotationVector:
    """Real section of the rotation parameter, r_a = phi_a sin(phi)/phi, so |r| <= 1."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.norm > 1.0:
            raise DomainError(f"rotation vector must satisfy |r| <= 1, got |r|={self.norm}")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    @classmethod
    def from_axis_angle(cls, axis: Sequence[float], phi: float) -> "RotationVector":
        n = np.asarray(axis, dtype=float)
        length = float(np.linalg.norm(n))
        if length == 0.0:
            raise DomainError("rotation axis must be nonzero")
        r = n / length * math.sin(phi)
        return cls(float(r[0]), float(r[1]), float(r[2]))


def _radial_density(rho: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    # (1/sqrt(1-r^2) - 1)/r^2 rewritten as 1/(s(1+s)) with s = sqrt(1-r^2).
    s = np.sqrt(1.0 - np.square(rho))
    return 1.0 / (8.0 * math.pi**2 * s * (1.0 + s))


def dr_density(r: Union[RotationVector, Sequence[float]]) -> float:
    """
    Holomorphic factor of the connection measure on the real section,
    (1/sqrt(1 - r^2) - 1) / (8 pi^2 r^2).

    Finite at r = 0, where it equals 1/(16 pi^2).
    """
    rho = r.norm if isinstance(r, RotationVector) else float(np.linalg.norm(np.asarray(r, dtype=float)))
    if rho >= 1.0:
        raise DomainError(f"density is defined for |r| < 1, got |r|={rho}")
    return float(_radial_density(rho))


def measure_norm(spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    Integral of dr_density over the unit ball by quadrature.

    The angular integral gives 4 pi int_0^1 rho^2 density(rho) d rho; the
    substitution rho = sin(theta) absorbs the 1/sqrt(1 - rho^2) endpoint
    singularity into the Jacobian cos(theta).
    """

    def integrand(theta: np.ndarray) -> np.ndarray:
        rho = np.sin(theta)
        return 4.0 * math.pi * rho * rho * _radial_density(rho) * np.cos(theta)

    res = integrate(integrand, 0.0, math.pi / 2.0, spec)
    return res.value.real


def i_tilde_closed(z: complex) -> complex:
    """Generating function 2 pi ln((1 + sqrt(1 - z^2))/2) on principal branches."""
    z = complex(z)
    return 2.0 * math.pi * cmath.log((1.0 + cmath.sqrt(1.0 - z * z)) / 2.0)


def i_tilde_quadrature(z: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    One-dimensional reduction of the generating function,
    -2 pi int_0^z (1/sqrt(1-rho^2) - 1) d rho / rho, for real |z| <= 1.

    The velocity integral is done analytically; with rho = sin(theta) the
    remaining integrand becomes tan(theta/2) on [0, arcsin z].
    """
    z = float(z)
    if abs(z) > 1.0:
        raise DomainError(f"reduction holds for real |z| <= 1, got z={z}")
    if z == 0.0:
        return 0.0
    res = integrate(lambda t: np.tan(0.5 * t), 0.0, math.asin(z), spec)
    return -2.0 * math.pi * res.value.real


def i_tilde_series(order: int) -> TruncatedSeries:
    """Taylor series of the generating function in z, built from elementary series."""
    z = variable_series(order)
    z2 = z * z
    root = elementary_series(SeriesKind.SQRT1M, order)(z2)
    log_half = elementary_series(SeriesKind.LN1P, order)((root - 1.0) / 2.0)
    return 2.0 * math.pi * log_half
