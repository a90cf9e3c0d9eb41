from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import QuadratureError

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


class QuadratureSpec(BaseModel):
    """Convergence contract for one call to :func:`integrate`."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(1e-12, gt=0)
    rel_tol: float = Field(1e-10, gt=0)
    max_subdivisions: int = Field(2000, ge=1)
    # Fraction of the peak magnitude below which an infinite tail is cut.
    tail_cut: float = Field(1e-18, gt=0)

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    subdivisions: int

    def __iter__(self) -> Iterator:
        yield self.value
        yield self.error


# ----------------------------------------------------------------------
# Gauss-Kronrod 7/15 rule (QUADPACK abscissae and weights)
# ----------------------------------------------------------------------

_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
# Gauss weights at _XGK[1], _XGK[3], _XGK[5] and the centre.
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _GAUSS_WEIGHTS[_i] = _w
    _GAUSS_WEIGHTS[14 - _i] = _w
_GAUSS_WEIGHTS[7] = _WG[3]


def _gk15(f: Integrand, a: float, b: float) -> Tuple[complex, float]:
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = np.asarray(f(center + half * _NODES), dtype=complex)
    if fx.shape != _NODES.shape:
        raise ValueError(f"integrand must map 15 nodes to 15 values, got shape {fx.shape}")
    if not np.all(np.isfinite(fx)):
        raise QuadratureError(f"integrand is not finite on [{a}, {b}]")
    kronrod = half * complex(np.dot(_KRONROD_WEIGHTS, fx))
    gauss = half * complex(np.dot(_GAUSS_WEIGHTS, fx))
    return kronrod, abs(kronrod - gauss)


def _fsum_complex(values: List[complex]) -> complex:
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _adaptive(f: Integrand, a: float, b: float, spec: QuadratureSpec) -> QuadratureResult:
    """Bisect the interval with the largest error estimate until the total meets the target."""
    value, err = _gk15(f, a, b)
    seq = 0
    heap: List[Tuple[float, int, float, float, complex]] = [(-err, seq, a, b, value)]
    total, total_err = value, err

    while total_err > spec.target(total):
        if len(heap) >= spec.max_subdivisions:
            best = _fsum_complex([item[4] for item in sorted(heap, key=lambda it: it[2])])
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {len(heap)} subdivisions "
                f"(error estimate {total_err:.3e})",
                best_estimate=best,
                error_estimate=total_err,
                subdivisions=len(heap),
            )
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        left_val, left_err = _gk15(f, lo, mid)
        right_val, right_err = _gk15(f, mid, hi)
        seq += 1
        heapq.heappush(heap, (-left_err, seq, lo, mid, left_val))
        seq += 1
        heapq.heappush(heap, (-right_err, seq, mid, hi, right_val))
        total += left_val + right_val - val
        total_err += left_err + right_err + neg_err

    # Fixed left-to-right reduction keeps the result independent of heap history.
    ordered = sorted(heap, key=lambda it: it[2])
    value = _fsum_complex([item[4] for item in ordered])
    error = math.fsum(-item[0] for item in ordered)
    return QuadratureResult(value=value, error=error, subdivisions=len(ordered))


def _tail_cut(f: Integrand, a: float, spec: QuadratureSpec) -> float:
    """Offset beyond which every probe of |f| stays below tail_cut times the peak."""
    offsets = np.array([2.0**k for k in range(-4, 21)])
    mags = np.abs(np.asarray(f(a + offsets), dtype=complex))
    if not np.all(np.isfinite(mags)):
        raise QuadratureError(f"integrand is not finite on the tail probes from {a}")
    peak = float(mags.max())
    if peak == 0.0:
        return 0.0
    above = np.nonzero(mags >= spec.tail_cut * peak)[0]
    last = int(above[-1])
    if last + 1 >= offsets.size:
        raise QuadratureError(
            f"integrand does not decay below {spec.tail_cut:g} of its peak before {a + offsets[-1]:g}"
        )
    return float(offsets[last + 1])


def integrate(
    f: Integrand,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> QuadratureResult:
    """
    Integrate ``f`` over [a, b] with adaptive Gauss-Kronrod bisection.

    ``f`` is called with a 1-D float array of nodes and must return an array
    of the same shape (real or complex). Real and imaginary parts share the
    subdivision tree; the error estimate of an interval is |K15 - G7|.

    ``b`` may be ``math.inf``. The tail is then cut where probes of |f| at
    a + 2**k fall below ``spec.tail_cut`` of their peak, and the cut is
    extended by doubling pieces until two successive pieces are each
    smaller than ``spec.abs_tol``.

    Raises QuadratureError when the subdivision budget is exhausted or the
    integrand is not finite; the exception carries the best estimate.
    """
    if a == b:
        return QuadratureResult(0j, 0.0, 0)
    if math.isinf(b):
        if b < 0:
            raise ValueError("only +inf is supported as an infinite limit")
        return _integrate_to_infinity(f, a, spec)
    if b < a:
        res = _adaptive(f, b, a, spec)
        return QuadratureResult(-res.value, res.error, res.subdivisions)
    res = _adaptive(f, a, b, spec)
    logger.debug("integrate [%g, %g]: %d subdivisions, err %.3e", a, b, res.subdivisions, res.error)
    return res


def _integrate_to_infinity(f: Integrand, a: float, spec: QuadratureSpec) -> QuadratureResult:
    cut = _tail_cut(f, a, spec)
    if cut == 0.0:
        return QuadratureResult(0j, 0.0, 0)

    head = _adaptive(f, a, a + cut, spec)
    pieces = [head.value]
    error = head.error
    subdivisions = head.subdivisions

    lo, width, quiet = a + cut, cut, 0
    for _ in range(64):
        piece = _adaptive(f, lo, lo + width, spec)
        pieces.append(piece.value)
        error += piece.error
        subdivisions += piece.subdivisions
        quiet = quiet + 1 if abs(piece.value) < spec.abs_tol else 0
        if quiet >= 2:
            break
        lo += width
        width *= 2.0
    else:
        raise QuadratureError(
            f"tail beyond {a + cut:g} did not settle",
            best_estimate=_fsum_complex(pieces),
            error_estimate=error,
            subdivisions=subdivisions,
        )

    logger.debug("integrate [%g, inf): cut %g, %d subdivisions", a, cut, subdivisions)
    return QuadratureResult(_fsum_complex(pieces), error, subdivisions)
