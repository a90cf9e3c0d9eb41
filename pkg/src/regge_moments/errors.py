from __future__ import annotations

from typing import Optional


class ReggeMomentsError(Exception):
    """Base class for every failure raised by the regge_moments package."""


class InsufficientOrderError(ReggeMomentsError, ValueError):
    """A derivative or coefficient was requested beyond a series' stored order."""

    def __init__(self, requested: int, order: int) -> None:
        super().__init__(
            f"derivative of order {requested} requested from a series truncated at order {order}"
        )
        self.requested = requested
        self.order = order


class CompositionError(ReggeMomentsError, ValueError):
    """Inner series of a composition has a nonzero constant term."""


class QuadratureError(ReggeMomentsError, RuntimeError):
    """Adaptive quadrature failed to meet its tolerance.

    The best estimate reached so far is kept on the exception so callers
    (the verification suite in particular) can still report it.
    """

    def __init__(
        self,
        message: str,
        best_estimate: complex = complex("nan"),
        error_estimate: float = float("inf"),
        subdivisions: int = 0,
    ) -> None:
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


class DomainError(ReggeMomentsError, ValueError):
    """Argument outside the domain of a function (|r| >= 1, Re x <= 0, ...)."""


class SingularPointError(ReggeMomentsError):
    """Evaluation point lies within tolerance of an excluded singular point."""

    def __init__(self, n: int, location: complex, vsq: Optional[complex] = None) -> None:
        where = "" if vsq is None else f" (vsq={vsq})"
        super().__init__(f"too close to singular point n={n} at {location}{where}")
        self.n = n
        self.location = location


class DivergenceError(ReggeMomentsError):
    """Density diverges at the requested point."""


class AdmissibilityError(ReggeMomentsError, ValueError):
    """Probe polynomial does not vanish to second order at the n=1 singular point."""


class OrderOverflowError(ReggeMomentsError, OverflowError):
    """k! for the requested derivative order does not fit in a double."""

    def __init__(self, requested: int, maximum: int) -> None:
        super().__init__(
            f"derivative of order {requested} overflows double precision; the maximum supported order is {maximum}"
        )
        self.requested = requested
        self.maximum = maximum
