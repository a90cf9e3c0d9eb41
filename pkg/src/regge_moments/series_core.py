from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import CompositionError, InsufficientOrderError, OrderOverflowError

Number = Union[int, float, complex]

# 171! exceeds the largest double.
MAX_DERIVATIVE_ORDER = 170


def working_order(l: int) -> int:
    """Series order used for the moment of index ``l`` (two above the derivative needed, plus margin)."""
    return 2 * l + 6


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """
    Power series in one variable truncated after the h**order term.

    ``coeffs[k]`` holds the Taylor coefficient of h**k (already divided by k!),
    so ``derivative_at_zero`` multiplies the factorial back in.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=complex).reshape(-1)
        if arr.size == 0:
            raise ValueError("a truncated series needs at least the constant coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InsufficientOrderError(order, self.order)
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: Union["TruncatedSeries", Number]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return series_add(self, other)
        return series_add(self, constant_series(other, self.order))

    __radd__ = __add__

    def __sub__(self, other: Union["TruncatedSeries", Number]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return series_sub(self, other)
        return series_sub(self, constant_series(other, self.order))

    def __rsub__(self, other: Number) -> "TruncatedSeries":
        return series_sub(constant_series(other, self.order), self)

    def __neg__(self) -> "TruncatedSeries":
        return series_scale(self, -1)

    def __mul__(self, other: Union["TruncatedSeries", Number]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs / scalar)

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs.tolist()})"


# ----------------------------------------------------------------------
# Arithmetic
# ----------------------------------------------------------------------

def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    k = min(a.order, b.order)
    return TruncatedSeries(a.coeffs[: k + 1] + b.coeffs[: k + 1])


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    k = min(a.order, b.order)
    return TruncatedSeries(a.coeffs[: k + 1] - b.coeffs[: k + 1])


def series_scale(a: TruncatedSeries, factor: Number) -> TruncatedSeries:
    return TruncatedSeries(a.coeffs * factor)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to the smaller of the two orders."""
    k = min(a.order, b.order)
    prod = np.convolve(a.coeffs[: k + 1], b.coeffs[: k + 1])
    return TruncatedSeries(prod[: k + 1])


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """
    Coefficients of f(g(h)) up to min(order f, order g).

    g must have an exactly zero constant term; otherwise every coefficient
    of the result would depend on terms of f beyond its truncation.
    """
    if g.coeffs[0] != 0:
        raise CompositionError(
            f"inner series must have zero constant term, got {g.coeffs[0]!r}"
        )

    k = min(f.order, g.order)
    inner = g.coeffs[: k + 1]
    acc = np.zeros(k + 1, dtype=complex)
    acc[0] = f.coeffs[k]
    # Horner in g: (((f_k) g + f_{k-1}) g + ...) + f_0
    for j in range(k - 1, -1, -1):
        acc = np.convolve(acc, inner)[: k + 1]
        acc[0] += f.coeffs[j]
    return TruncatedSeries(acc)


def evaluate(s: TruncatedSeries, h: Number) -> complex:
    """Value of the truncated polynomial at h."""
    acc = 0j
    for c in s.coeffs[::-1]:
        acc = acc * h + c
    return complex(acc)


def constant_series(value: Number, order: int) -> TruncatedSeries:
    coeffs = np.zeros(order + 1, dtype=complex)
    coeffs[0] = value
    return TruncatedSeries(coeffs)


def variable_series(order: int, scale: Number = 1) -> TruncatedSeries:
    """The series ``scale * h`` at the given order."""
    coeffs = np.zeros(order + 1, dtype=complex)
    if order >= 1:
        coeffs[1] = scale
    return TruncatedSeries(coeffs)


# ----------------------------------------------------------------------
# Elementary functions
# ----------------------------------------------------------------------

class SeriesKind(str, Enum):
    SIN = "sin"
    COS = "cos"
    EXP = "exp"
    SQRT1M = "sqrt1m"  # sqrt(1 - h)
    LN1P = "ln1p"  # ln(1 + h)
    ARCSIN = "arcsin"


@lru_cache(maxsize=None)
def _exact_coefficients(kind: SeriesKind, order: int) -> Tuple[Fraction, ...]:
    out: List[Fraction] = []
    if kind is SeriesKind.SQRT1M:
        c = Fraction(1)
        out.append(c)
        for k in range(1, order + 1):
            c = c * (Fraction(k) - Fraction(3, 2)) / k
            out.append(c)
        return tuple(out)

    for k in range(order + 1):
        if kind is SeriesKind.SIN:
            c = Fraction((-1) ** ((k - 1) // 2), math.factorial(k)) if k % 2 else Fraction(0)
        elif kind is SeriesKind.COS:
            c = Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 == 0 else Fraction(0)
        elif kind is SeriesKind.EXP:
            c = Fraction(1, math.factorial(k))
        elif kind is SeriesKind.LN1P:
            c = Fraction((-1) ** (k + 1), k) if k else Fraction(0)
        elif kind is SeriesKind.ARCSIN:
            if k % 2:
                n = (k - 1) // 2
                c = Fraction(math.comb(2 * n, n), 4**n * (2 * n + 1))
            else:
                c = Fraction(0)
        else:  # pragma: no cover
            raise ValueError(f"unknown series kind: {kind!r}")
        out.append(c)
    return tuple(out)


def elementary_series(kind: Union[SeriesKind, str], order: int) -> TruncatedSeries:
    """
    Maclaurin series of sin, cos, exp, sqrt(1-h), ln(1+h) or arcsin at the given order.

    Coefficients are generated as exact rationals and only converted to
    complex floats at the end, so zero coefficients are exact zeros.
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    kind = SeriesKind(kind)
    exact = _exact_coefficients(kind, order)
    return TruncatedSeries(np.array([complex(float(c)) for c in exact], dtype=complex))


def derivative_at_zero(s: TruncatedSeries, k: int) -> complex:
    if k < 0:
        raise ValueError(f"derivative order must be nonnegative, got {k}")
    if k > s.order:
        raise InsufficientOrderError(k, s.order)
    if k > MAX_DERIVATIVE_ORDER:
        raise OrderOverflowError(k, MAX_DERIVATIVE_ORDER)
    return float(math.factorial(k)) * complex(s.coeffs[k])


def is_even(s: TruncatedSeries) -> bool:
    return bool(np.all(s.coeffs[1::2] == 0))


def from_coefficients(coeffs: Sequence[Number]) -> TruncatedSeries:
    return TruncatedSeries(np.asarray(coeffs, dtype=complex))
