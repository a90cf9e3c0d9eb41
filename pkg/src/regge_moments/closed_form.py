from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DivergenceError, DomainError, SingularPointError
from .spectral_moments import Variant
from .special import ki1, ki1_k0_ray, log_abs_sinh

logger = logging.getLogger(__name__)

__all__ = [
    "AreaSquared",
    "DecayFit",
    "DistributionSample",
    "Region",
    "SingularPoint",
    "branch_w",
    "decay_rate",
    "distribution",
    "distribution_arcsin",
    "distribution_linear",
    "ki1",
    "ki1_k0_ray",
    "local_maxima",
    "log_arcsin_from_w",
    "log_arcsin_kernel",
    "log_distribution",
    "sample_distribution",
    "singular_points",
]

SINGULAR_EPS = 1e-9
UNDERFLOW_FLOOR = 1e-300
_SMALL_Z = 1e-3
_LOG_4 = math.log(4.0)
_LOG_2_OVER_PI = math.log(2.0 / math.pi)


class Region(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"


@dataclass(frozen=True)
class AreaSquared:
    """Squared complexified area; real values are physical (positive timelike, negative spacelike)."""

    vsq: complex

    @property
    def area_abs(self) -> float:
        return math.sqrt(abs(self.vsq))

    @property
    def is_physical(self) -> bool:
        return complex(self.vsq).imag == 0.0

    @property
    def region(self) -> Optional[Region]:
        if not self.is_physical or self.vsq == 0:
            return None
        return Region.TIMELIKE if complex(self.vsq).real > 0 else Region.SPACELIKE

    @classmethod
    def from_area(cls, area: float, region: Region) -> "AreaSquared":
        a2 = float(area) ** 2
        return cls(a2 if Region(region) is Region.TIMELIKE else -a2)


@dataclass(frozen=True)
class SingularPoint:
    n: int
    location: complex
    order: int


@dataclass(frozen=True)
class DistributionSample:
    vsq: float
    n_value: float

    @property
    def scaled(self) -> float:
        """(2 pi)^2 N, equal to 1 at the origin for the arcsin variant."""
        return (2.0 * math.pi) ** 2 * self.n_value


@dataclass(frozen=True)
class DecayFit:
    gamma: float
    region: Region
    variant: Variant
    rate: float
    expected: float
    window: Tuple[float, float]
    shrunk: bool

    @property
    def relative_error(self) -> float:
        return abs(self.rate - self.expected) / self.expected


# ----------------------------------------------------------------------
# Branch of w = sqrt((1/gamma - i)^2 v^2)
# ----------------------------------------------------------------------

def _canonical(w: np.ndarray) -> np.ndarray:
    flip = (w.real < 0) | ((w.real == 0) & (w.imag < 0))
    return np.where(flip, -w, w)


def branch_w(vsq: complex, gamma: float) -> complex:
    """w with Re w >= 0, and Im w >= 0 when Re w = 0."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    w = np.sqrt(complex(1.0 / gamma, -1.0) ** 2 * complex(vsq))
    return complex(_canonical(np.asarray(w)))


def _branch_w_array(vsq: np.ndarray, gamma: float) -> np.ndarray:
    return _canonical(np.sqrt(complex(1.0 / gamma, -1.0) ** 2 * np.asarray(vsq, dtype=complex)))


# ----------------------------------------------------------------------
# Singular points
# ----------------------------------------------------------------------

def _first_singular_point(gamma: float) -> complex:
    return 4.0 * gamma * gamma / complex(gamma, 1.0) ** 2


def singular_points(gamma: float, n_max: int) -> List[SingularPoint]:
    """Excluded points 4 n^2 (1 + i/gamma)^-2; n = 1 has order 2."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    x0 = _first_singular_point(gamma)
    return [SingularPoint(n=n, location=n * n * x0, order=2 if n == 1 else 1) for n in range(1, n_max + 1)]


def _check_singular(vsq: complex, gamma: float) -> None:
    x0 = _first_singular_point(gamma)
    n_est = int(round(math.sqrt(abs(vsq) / abs(x0))))
    for n in (n_est - 1, n_est, n_est + 1):
        if n < 1:
            continue
        location = n * n * x0
        if abs(vsq - location) < SINGULAR_EPS * abs(location):
            raise SingularPointError(n, location, vsq)


# ----------------------------------------------------------------------
# Distribution
# ----------------------------------------------------------------------

def log_arcsin_kernel(w: np.ndarray) -> np.ndarray:
    """ln N for the arcsin variant at w as given, with no branch rewrite. Even in w."""
    w = np.asarray(w, dtype=complex)
    z = 0.5 * math.pi * w
    small = np.abs(z) < _SMALL_Z
    z2 = z * z
    with np.errstate(divide="ignore", invalid="ignore"):
        # ln|w / sinh(pi w/2)|
        near = _LOG_2_OVER_PI + np.log(np.abs(1.0 - z2 / 6.0 + 7.0 * z2 * z2 / 360.0))
        far = np.log(np.abs(w)) - log_abs_sinh(z)
        ratio = np.where(small, near, far)
        pole = np.log(np.abs(0.25 * w * w + 1.0))
    return 2.0 * (ratio - _LOG_4 - pole)


def log_arcsin_from_w(w: np.ndarray) -> np.ndarray:
    """ln N for the arcsin variant, evaluated on the canonical branch of w."""
    return log_arcsin_kernel(_canonical(np.asarray(w, dtype=complex)))


def _log_linear_from_w(w: complex) -> float:
    y = 0.5 * w
    k = ki1(y)
    if k == 0:
        return -math.inf
    return 2.0 * (math.log(abs(k)) - math.log(math.pi) - math.log(abs(w)))


def distribution_arcsin(vsq: complex, gamma: float) -> float:
    """
    |(w/4) / ((w^2/4 + 1) sinh(pi w/2))|^2, evaluated in log space.

    Even in w. Raises SingularPointError within 1e-9 |location| of an
    excluded point.
    """
    _check_singular(complex(vsq), gamma)
    w = branch_w(vsq, gamma)
    return float(np.exp(log_arcsin_from_w(np.asarray(w))))


def distribution_linear(vsq: complex, gamma: float) -> float:
    """|Ki1(w/2) / (2 pi (w/2))|^2; diverges at the origin."""
    if vsq == 0:
        raise DivergenceError("the linear-variant density diverges at vsq = 0")
    w = branch_w(vsq, gamma)
    return math.exp(_log_linear_from_w(w))


def distribution(vsq: complex, gamma: float, variant: Union[Variant, str] = Variant.ARCSIN) -> float:
    if Variant(variant) is Variant.ARCSIN:
        return distribution_arcsin(vsq, gamma)
    return distribution_linear(vsq, gamma)


def log_distribution(
    vsq: Union[float, Sequence[float], np.ndarray],
    gamma: float,
    variant: Union[Variant, str] = Variant.ARCSIN,
) -> np.ndarray:
    """ln N on an array of real vsq (no singular-point test: none lie on the real axis)."""
    vsq = np.atleast_1d(np.asarray(vsq, dtype=float))
    w = _branch_w_array(vsq, gamma)
    if Variant(variant) is Variant.ARCSIN:
        return log_arcsin_from_w(w)
    out = np.empty(vsq.shape, dtype=float)
    for i, (v, wi) in enumerate(zip(vsq, w)):
        out[i] = math.inf if v == 0 else _log_linear_from_w(complex(wi))
    return out


def sample_distribution(
    vsq_grid: Union[Sequence[float], np.ndarray],
    gamma: float,
    variant: Union[Variant, str] = Variant.ARCSIN,
) -> List[DistributionSample]:
    """Samples in grid order; the linear density at the origin is reported as +inf."""
    grid = np.asarray(vsq_grid, dtype=float)
    values = np.exp(log_distribution(grid, gamma, variant))
    return [DistributionSample(vsq=float(v), n_value=float(n)) for v, n in zip(grid, values)]


# ----------------------------------------------------------------------
# Maxima and decay
# ----------------------------------------------------------------------

def local_maxima(
    gamma: float,
    vsq_lo: float,
    vsq_hi: float,
    variant: Union[Variant, str] = Variant.ARCSIN,
    samples: int = 2001,
) -> List[float]:
    """
    Interior local maxima of N on the real segment [vsq_lo, vsq_hi].

    A uniform grid brackets each maximum; bounded Brent refinement on -ln N
    then locates it to 1e-8.
    """
    if not vsq_lo < vsq_hi:
        raise ValueError(f"need vsq_lo < vsq_hi, got [{vsq_lo}, {vsq_hi}]")
    grid = np.linspace(vsq_lo, vsq_hi, samples)
    logn = log_distribution(grid, gamma, variant)

    def neg_log(x: float) -> float:
        return -float(log_distribution([x], gamma, variant)[0])

    found: List[float] = []
    for i in range(1, samples - 1):
        if np.isfinite(logn[i]) and logn[i] > logn[i - 1] and logn[i] >= logn[i + 1]:
            res = minimize_scalar(
                neg_log,
                bounds=(grid[i - 1], grid[i + 1]),
                method="bounded",
                options={"xatol": 1e-8},
            )
            found.append(float(res.x))
    logger.debug("local_maxima gamma=%g [%g, %g]: %d found", gamma, vsq_lo, vsq_hi, len(found))
    return found


def expected_decay_rate(gamma: float, region: Union[Region, str], variant: Union[Variant, str]) -> float:
    base = math.pi if Variant(variant) is Variant.ARCSIN else 1.0
    return base if Region(region) is Region.SPACELIKE else base / gamma


def decay_rate(
    gamma: float,
    region: Union[Region, str],
    variant: Union[Variant, str] = Variant.ARCSIN,
    window: Tuple[float, float] = (10.0, 30.0),
    points: int = 41,
) -> DecayFit:
    """
    Exponential decay rate of N in |A| from a least-squares fit of
    -ln N = rate |A| + p ln|A| + const over the window.

    The ln|A| column absorbs the algebraic prefactor of the density.
    Samples below 1e-300 truncate the window, which is then reported as shrunk.
    """
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    region = Region(region)
    variant = Variant(variant)

    area = np.linspace(window[0], window[1], points)
    vsq = area**2 if region is Region.TIMELIKE else -(area**2)
    logn = log_distribution(vsq, gamma, variant)

    usable = logn > math.log(UNDERFLOW_FLOOR)
    shrunk = not bool(np.all(usable))
    if shrunk:
        stop = int(np.argmin(usable))
        if stop < 3:
            raise DomainError(
                f"density underflows below {UNDERFLOW_FLOOR:g} within the first samples of {window}"
            )
        area, logn = area[:stop], logn[:stop]
        logger.warning("decay window shrunk to [%g, %g] for gamma=%g %s", area[0], area[-1], gamma, region.value)

    design = np.column_stack([area, np.log(area), np.ones_like(area)])
    coef, *_ = np.linalg.lstsq(design, -logn, rcond=None)
    return DecayFit(
        gamma=gamma,
        region=region,
        variant=variant,
        rate=float(coef[0]),
        expected=expected_decay_rate(gamma, region, variant),
        window=(float(area[0]), float(area[-1])),
        shrunk=shrunk,
    )
