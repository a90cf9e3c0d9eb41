from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .closed_form import (
    Region,
    decay_rate,
    distribution_arcsin,
    expected_decay_rate,
    local_maxima,
)
from .errors import AdmissibilityError, ReggeMomentsError
from .group_measure import (
    MEASURE_NORM_EXACT,
    i_tilde_closed,
    i_tilde_quadrature,
    i_tilde_series,
    measure_norm,
)
from .quadrature import QuadratureSpec, integrate
from .series_core import derivative_at_zero, evaluate, working_order
from .spectral_moments import (
    LINEAR_BESSEL_NORMALIZATION,
    ModelParams,
    ProbePolynomial,
    Route,
    Variant,
    available_routes,
    linear_bessel_radial,
    moment_of_polynomial,
    moment_scalar,
    radial_functional,
    regular_part,
    rescaled_generator,
    singular_coefficients,
    singular_part,
    table_moment_integral,
    unrescaled_generator,
)
from .special import ki1, ki1_asymptotic, ki1_k0_ray

logger = logging.getLogger(__name__)

__all__ = [
    "CHECK_FAMILIES",
    "CheckReport",
    "ProbePolynomial",
    "TOLERANCES",
    "TolerancePolicy",
    "VerifyConfig",
    "check_figure1",
    "check_linear_variant_bessel",
    "check_moment_routes",
    "check_radial_functional",
    "check_table_integral",
    "format_reports",
    "reports_to_frame",
    "run_all",
    "write_reports",
]


class TolerancePolicy(str, Enum):
    ABS = "abs"
    REL = "rel"
    EITHER = "either"
    INFO = "info"  # reported, never fails


# Acceptance per check, with the error source that dominates it.
TOLERANCES: Dict[str, Tuple[float, TolerancePolicy]] = {
    "table-integral": (1e-10, TolerancePolicy.ABS),  # quadrature
    "generating-function": (1e-10, TolerancePolicy.ABS),  # quadrature
    "generating-function-series": (1e-10, TolerancePolicy.REL),  # series truncation
    "moment-routes-series": (1e-10, TolerancePolicy.REL),  # rounding in complex composition
    "moment-routes-integral": (1e-8, TolerancePolicy.REL),  # quadrature of I_(2l+3)
    "moment-routes-spot": (1e-12, TolerancePolicy.EITHER),  # rounding
    "moment-routes-parity": (0.0, TolerancePolicy.ABS),  # exact zeros
    "singular-identity": (1e-10, TolerancePolicy.ABS),  # quadrature of I_3
    "singular-decomposition": (1e-8, TolerancePolicy.REL),  # quadrature of I_(2l+3)
    "radial-functional": (1e-6, TolerancePolicy.REL),  # oscillatory radial quadrature
    "linear-bessel": (1e-6, TolerancePolicy.REL),  # nested Ki1 quadrature
    "ki1-representations": (1e-10, TolerancePolicy.REL),  # both quadratures
    "ki1-origin": (1e-6, TolerancePolicy.ABS),  # Ki1(x) - pi/2 ~ x ln x
    "ki1-asymptote": (5e-3, TolerancePolicy.REL),  # next asymptotic term
    "distribution-maxima": (0.05, TolerancePolicy.ABS),  # peak offset from the nominal area
    "distribution-maxima-intercept": (1e-12, TolerancePolicy.ABS),  # rounding
    "decay-rate": (0.03, TolerancePolicy.REL),  # finite fit window
    "measure-norm": (1e-10, TolerancePolicy.ABS),  # quadrature
    "conjugation-symmetry": (1e-12, TolerancePolicy.EITHER),  # rounding
}

CHECK_FAMILIES: Tuple[str, ...] = (
    "conjugation-symmetry",
    "decay-rate",
    "distribution-maxima",
    "generating-function",
    "ki1-representations",
    "linear-bessel",
    "measure-norm",
    "moment-routes",
    "radial-functional",
    "singular-identity",
    "table-integral",
)


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    tolerance: float
    policy: TolerancePolicy
    passed: bool
    detail: str = ""

    @classmethod
    def compare(
        cls,
        name: str,
        lhs: complex,
        rhs: complex,
        key: str,
        detail: str = "",
        policy: Optional[TolerancePolicy] = None,
    ) -> "CheckReport":
        tolerance, default_policy = TOLERANCES[key]
        policy = default_policy if policy is None else policy
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_err = abs_err / scale if scale > 0 else 0.0
        if not math.isfinite(abs_err):
            passed = policy is TolerancePolicy.INFO
        elif policy is TolerancePolicy.ABS:
            passed = abs_err <= tolerance
        elif policy is TolerancePolicy.REL:
            passed = rel_err <= tolerance
        elif policy is TolerancePolicy.EITHER:
            passed = abs_err <= tolerance or rel_err <= tolerance
        else:
            passed = True
        return cls(name, lhs, rhs, abs_err, rel_err, tolerance, policy, passed, detail)

    @classmethod
    def failure(cls, name: str, key: str, exc: Exception) -> "CheckReport":
        tolerance, policy = TOLERANCES[key]
        best = getattr(exc, "best_estimate", complex("nan"))
        nan = float("nan")
        return cls(name, complex(best), complex("nan"), nan, nan, tolerance, policy, False, f"{type(exc).__name__}: {exc}")


class VerifyConfig(BaseModel):
    """Which check families to run, and the grids they run on."""

    model_config = ConfigDict(frozen=True)

    only: Optional[Tuple[str, ...]] = None
    quadrature: QuadratureSpec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)
    table_h: Tuple[float, ...] = (0.0, 0.5, 1.0, 2.0, 3.0)
    generating_z: Tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    moment_l_max: int = Field(6, ge=0)
    moment_gammas: Tuple[float, ...] = (0.1, 0.5, 1.0, 2.0, 10.0)
    radial_gammas: Tuple[float, ...] = (0.5, 1.0, 2.0)
    bessel_l_max: int = Field(2, ge=0)
    bessel_gamma: float = Field(1.0, gt=0)
    ki1_points: Tuple[float, ...] = (0.5, 1.0, 5.0)
    maxima_gammas: Tuple[float, ...] = (0.05, 10.0)
    decay_window: Tuple[float, float] = (10.0, 30.0)

    @field_validator("only")
    @classmethod
    def _known_families(cls, value: Optional[Tuple[str, ...]]) -> Optional[Tuple[str, ...]]:
        if value is None:
            return value
        unknown = sorted(set(value) - set(CHECK_FAMILIES))
        if unknown:
            raise ValueError(f"unknown check name(s): {', '.join(unknown)}; known: {', '.join(CHECK_FAMILIES)}")
        return value


def _guarded(name: str, key: str, fn: Callable[[], CheckReport]) -> CheckReport:
    try:
        return fn()
    except ReggeMomentsError as exc:
        logger.warning("check %s failed: %s", name, exc)
        return CheckReport.failure(name, key, exc)


# ----------------------------------------------------------------------
# Table integral and generating function
# ----------------------------------------------------------------------

def table_integral_closed(h: float) -> float:
    """(h/2) sin h - 1/2 + (1/2) cos h ln(2 (1 + cos h))."""
    return 0.5 * h * math.sin(h) - 0.5 + 0.5 * math.cos(h) * math.log(2.0 * (1.0 + math.cos(h)))


def check_table_integral(h: float, spec: QuadratureSpec) -> CheckReport:
    """int_0^inf lambda/(lambda^2 + 1) cosh(h lambda)/sinh(pi lambda) d lambda against its closed form."""
    if abs(h) > math.pi - 0.05:
        raise ValueError(f"|h| must stay 0.05 away from pi, got h={h}")
    name = f"table-integral[h={h:g}]"

    def integrand(lam: np.ndarray) -> np.ndarray:
        waves = np.exp((h - math.pi) * lam) + np.exp(-(h + math.pi) * lam)
        return lam / (lam * lam + 1.0) * waves / (-np.expm1(-2.0 * math.pi * lam))

    def run() -> CheckReport:
        res = integrate(integrand, 0.0, math.inf, spec)
        return CheckReport.compare(name, res.value.real, table_integral_closed(h), "table-integral",
                                   detail=f"subdivisions={res.subdivisions}")

    return _guarded(name, "table-integral", run)


def check_generating_function(config: VerifyConfig) -> List[CheckReport]:
    reports = []
    for z in config.generating_z:
        name = f"generating-function[z={z:g}]"
        reports.append(_guarded(name, "generating-function", lambda z=z, name=name: CheckReport.compare(
            name, i_tilde_quadrature(z, config.quadrature), i_tilde_closed(z), "generating-function")))
    series = i_tilde_series(14)
    for z in (0.05, 0.1):
        reports.append(CheckReport.compare(
            f"generating-function[series,z={z:g}]", evaluate(series, z), i_tilde_closed(z),
            "generating-function-series", detail="order 14"))
    return reports


# ----------------------------------------------------------------------
# Moments
# ----------------------------------------------------------------------

def _label(l: int, p: ModelParams) -> str:
    return f"l={l},gamma={p.gamma:g},{p.variant.value}"


def check_moment_routes(
    l_max: int,
    gammas: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
) -> List[CheckReport]:
    """Series routes against each other, and the integral representation against the rescaled series."""
    spec = QuadratureSpec() if spec is None else spec
    reports: List[CheckReport] = []
    for variant in Variant:
        for gamma in gammas:
            p = ModelParams(gamma=gamma, variant=variant)
            for l in range(l_max + 1):
                ref = moment_scalar(l, p, Route.SERIES_RESCALED).value
                unres = moment_scalar(l, p, Route.SERIES_UNRESCALED).value
                reports.append(CheckReport.compare(
                    f"moment-routes[series,{_label(l, p)}]", unres, ref, "moment-routes-series"))
                if variant is Variant.ARCSIN:
                    name = f"moment-routes[integral,{_label(l, p)}]"
                    reports.append(_guarded(name, "moment-routes-integral", lambda l=l, p=p, ref=ref, name=name:
                                            CheckReport.compare(
                                                name, moment_scalar(l, p, Route.INTEGRAL_REP, spec=spec).value,
                                                ref, "moment-routes-integral")))

        order = working_order(l_max)
        p = ModelParams(gamma=1.0, variant=variant)
        odd = [derivative_at_zero(rescaled_generator(variant, order), k) for k in range(1, order + 1, 2)]
        odd += [derivative_at_zero(unrescaled_generator(p, order), k) for k in range(1, order + 1, 2)]
        worst = max(abs(v) for v in odd)
        reports.append(CheckReport.compare(
            f"moment-routes[parity,{variant.value}]", worst, 0.0, "moment-routes-parity",
            detail=f"max |odd derivative| over orders 1..{order}"))

    spot = moment_scalar(0, ModelParams(gamma=1.0), Route.SERIES_RESCALED).value
    reports.append(CheckReport.compare("moment-routes[spot,l=0,gamma=1]", spot, math.pi * (1 + 1j), "moment-routes-spot"))
    return reports


def check_singular_identity(spec: QuadratureSpec) -> List[CheckReport]:
    """I_3 = 3/4 - ln 2 from 2 I_3 - 2 + ln 4 = G''(0), and the (a, b) decomposition for small l."""
    reports: List[CheckReport] = []
    name = "singular-identity[I3]"
    reports.append(_guarded(name, "singular-identity", lambda: CheckReport.compare(
        name, table_moment_integral(3, spec), 0.75 - math.log(2.0), "singular-identity")))

    g2 = derivative_at_zero(rescaled_generator(Variant.ARCSIN, 6), 2)
    name = "singular-identity[series]"
    reports.append(_guarded(name, "singular-identity", lambda: CheckReport.compare(
        name, 2.0 * table_moment_integral(3, spec) - 2.0 + math.log(4.0), g2, "singular-identity")))

    for gamma in (0.5, 1.0):
        p = ModelParams(gamma=gamma)
        sc = singular_coefficients(0, p)
        for l in range(4):
            name = f"singular-decomposition[{_label(l, p)}]"

            def run(l: int = l, p: ModelParams = p, name: str = name) -> CheckReport:
                mono = ProbePolynomial.monomial(l, p)
                rebuilt = regular_part(l, p, spec) + sc.apply(mono.value_at(sc.x0), mono.slope_at(sc.x0))
                return CheckReport.compare(name, rebuilt, moment_scalar(l, p).value, "singular-decomposition")

            reports.append(_guarded(name, "singular-decomposition", run))
    return reports


# ----------------------------------------------------------------------
# Radial functionals
# ----------------------------------------------------------------------

def check_radial_functional(f: ProbePolynomial, gamma: float, spec: QuadratureSpec) -> CheckReport:
    """
    Series moment of an admissible probe against the real-axis radial quadrature.

    Admissibility is recomputed at ``gamma``; the variant and sector come from ``f.params``.
    """
    p = ModelParams(gamma=gamma, variant=f.params.variant, antiholomorphic=f.params.antiholomorphic)
    if p != f.params:
        f = ProbePolynomial(f.coeffs, p)
    if not f.admissible:
        raise AdmissibilityError(
            "the radial identity needs f(4(1 + i/gamma)^-2) = 0 and f'(4(1 + i/gamma)^-2) = 0; "
            f"got f(x0)={f.value_at(p.x0):.3e}, f'(x0)={f.slope_at(p.x0):.3e} at gamma={p.gamma:g}"
        )
    name = f"radial-functional[deg={f.degree},gamma={p.gamma:g}]"

    def run() -> CheckReport:
        series = moment_of_polynomial(f, p)
        radial = radial_functional(f, p, spec)
        return CheckReport.compare(name, series, radial.value, "radial-functional",
                                   detail=f"subdivisions={radial.subdivisions}")

    return _guarded(name, "radial-functional", run)


def _radial_reports(config: VerifyConfig) -> List[CheckReport]:
    reports: List[CheckReport] = []
    for gamma in config.radial_gammas:
        p = ModelParams(gamma=gamma)
        reports.append(check_radial_functional(ProbePolynomial.from_factors(p), gamma, config.quadrature))
        reports.append(check_radial_functional(ProbePolynomial.from_factors(p, extra_roots=[0.0]), gamma, config.quadrature))

    zero = ProbePolynomial([0.0], ModelParams(gamma=1.0))
    reports.append(CheckReport.compare(
        "radial-functional[zero]", moment_of_polynomial(zero), radial_functional(zero, zero.params).value,
        "radial-functional", policy=TolerancePolicy.ABS))

    # Monomials are not admissible: the radial integral misses the singular part.
    p = ModelParams(gamma=1.0)
    mono = ProbePolynomial.monomial(1, p)
    name = "radial-functional[monomial,l=1]"

    def info() -> CheckReport:
        series = moment_of_polynomial(mono, p)
        radial = radial_functional(mono, p, config.quadrature).value
        return CheckReport.compare(name, series, radial, "radial-functional", policy=TolerancePolicy.INFO,
                                   detail=f"discrepancy {series - radial:.6g}")

    reports.append(_guarded(name, "radial-functional", info))

    name = "radial-functional[monomial-singular,l=1]"

    def recovered() -> CheckReport:
        series = moment_of_polynomial(mono, p)
        radial = radial_functional(mono, p, config.quadrature).value
        return CheckReport.compare(name, series - radial, singular_part(mono, p), "radial-functional")

    reports.append(_guarded(name, "radial-functional", recovered))
    return reports


def check_linear_variant_bessel(l_max: int, gamma: float, spec: Optional[QuadratureSpec] = None) -> List[CheckReport]:
    """
    Linear-variant moments against the Ki1 radial integral.

    The proportionality constant is fixed from l = 0 and then held for
    l >= 1; its fitted value is reported against -i.
    """
    spec = QuadratureSpec() if spec is None else spec
    p = ModelParams(gamma=gamma, variant=Variant.LINEAR)
    reports: List[CheckReport] = []
    try:
        kappa = moment_scalar(0, p).value / linear_bessel_radial(0, p, spec).value
    except ReggeMomentsError as exc:
        return [CheckReport.failure(f"linear-bessel[normalization,gamma={gamma:g}]", "linear-bessel", exc)]

    reports.append(CheckReport.compare(
        f"linear-bessel[normalization,gamma={gamma:g}]", kappa, LINEAR_BESSEL_NORMALIZATION, "linear-bessel",
        detail=f"fitted at l=0: {kappa:.12g}"))
    for l in range(1, l_max + 1):
        name = f"linear-bessel[l={l},gamma={gamma:g}]"
        reports.append(_guarded(name, "linear-bessel", lambda l=l, name=name: CheckReport.compare(
            name, kappa * linear_bessel_radial(l, p, spec).value, moment_scalar(l, p).value, "linear-bessel")))
    return reports


def check_ki1(points: Sequence[float]) -> List[CheckReport]:
    reports: List[CheckReport] = []
    for x in [*points, complex(1.0, -1.0)]:
        name = f"ki1-representations[x={x:g}]"
        reports.append(_guarded(name, "ki1-representations", lambda x=x, name=name: CheckReport.compare(
            name, ki1(x), ki1_k0_ray(x), "ki1-representations")))
    reports.append(_guarded("ki1-representations[origin]", "ki1-origin", lambda: CheckReport.compare(
        "ki1-representations[origin]", ki1(1e-8), math.pi / 2.0, "ki1-origin")))
    reports.append(_guarded("ki1-representations[asymptote,x=30]", "ki1-asymptote", lambda: CheckReport.compare(
        "ki1-representations[asymptote,x=30]", ki1(30.0), ki1_asymptotic(30.0), "ki1-asymptote")))
    return reports


# ----------------------------------------------------------------------
# Distribution shape
# ----------------------------------------------------------------------

def check_figure1(gamma: float) -> CheckReport:
    """
    First three maxima of the arcsin density on the real axis.

    gamma << 1 puts them in the spacelike region near |A| = 2 gamma n,
    gamma >> 1 in the timelike region near |A| = 2n. Offsets are measured
    in |A| = sqrt|vsq|; heights must decrease and (2 pi)^2 N(0) must be 1.
    """
    tolerance, _ = TOLERANCES["distribution-maxima"]
    intercept_tol, _ = TOLERANCES["distribution-maxima-intercept"]
    name = f"distribution-maxima[gamma={gamma:g}]"
    if gamma < 1.0:
        lo, hi, nominal = -4.0 * gamma**2 * 12.0, 0.0, [2.0 * gamma * n for n in (1, 2, 3)]
    else:
        lo, hi, nominal = 0.0, 44.0, [2.0 * n for n in (1, 2, 3)]

    maxima = sorted(local_maxima(gamma, lo, hi), key=abs)[:3]
    intercept = (2.0 * math.pi) ** 2 * distribution_arcsin(0.0, gamma)
    intercept_ok = abs(intercept - 1.0) <= intercept_tol
    if len(maxima) < 3:
        return CheckReport(name, complex(len(maxima)), 3.0, float("inf"), float("inf"), tolerance,
                           TolerancePolicy.ABS, False, f"found {len(maxima)} maxima: {maxima}")

    areas = [math.sqrt(abs(v)) for v in maxima]
    offsets = [abs(a - n) / n for a, n in zip(areas, nominal)]
    heights = [distribution_arcsin(v, gamma) for v in maxima]
    decreasing = all(h1 > h2 for h1, h2 in zip(heights, heights[1:]))
    worst = max(offsets)
    passed = worst <= tolerance and decreasing and intercept_ok
    detail = (
        f"vsq={[round(v, 8) for v in maxima]} areas={[round(a, 6) for a in areas]} "
        f"heights={[f'{h:.6g}' for h in heights]} decreasing={decreasing} intercept={intercept:.15g}"
    )
    return CheckReport(name, complex(worst), 0j, worst, worst, tolerance, TolerancePolicy.ABS, passed, detail)


def check_decay(window: Tuple[float, float]) -> List[CheckReport]:
    cases = [
        (0.5, Region.SPACELIKE, Variant.ARCSIN),
        (2.0, Region.SPACELIKE, Variant.ARCSIN),
        (2.0, Region.TIMELIKE, Variant.ARCSIN),
        (1.0, Region.SPACELIKE, Variant.LINEAR),
        (2.0, Region.TIMELIKE, Variant.LINEAR),
    ]
    reports: List[CheckReport] = []
    for gamma, region, variant in cases:
        name = f"decay-rate[{variant.value},{region.value},gamma={gamma:g}]"

        def run(gamma: float = gamma, region: Region = region, variant: Variant = variant, name: str = name) -> CheckReport:
            fit = decay_rate(gamma, region, variant, window=window)
            return CheckReport.compare(name, fit.rate, expected_decay_rate(gamma, region, variant), "decay-rate",
                                       detail=f"window={fit.window} shrunk={fit.shrunk}")

        reports.append(_guarded(name, "decay-rate", run))
    return reports


def check_measure_norm(spec: QuadratureSpec) -> CheckReport:
    return _guarded("measure-norm", "measure-norm", lambda: CheckReport.compare(
        "measure-norm", measure_norm(spec), MEASURE_NORM_EXACT, "measure-norm"))


def check_conjugation_symmetry(
    l_max: int = 3,
    gammas: Sequence[float] = (0.5, 2.0),
    radial_l_max: int = 1,
) -> List[CheckReport]:
    """
    Flipping i/gamma -> -i/gamma conjugates the moment on every route.

    The radial quadrature only runs up to ``radial_l_max``; its oscillatory
    tail stops converging at larger l.
    """
    reports: List[CheckReport] = []
    for variant in Variant:
        for gamma in gammas:
            p = ModelParams(gamma=gamma, variant=variant)
            for route in available_routes(variant):
                top = radial_l_max if route is Route.RADIAL_QUADRATURE else l_max
                for l in range(top + 1):
                    name = f"conjugation-symmetry[{route.value},{_label(l, p)}]"

                    def run(l: int = l, p: ModelParams = p, route: Route = route, name: str = name) -> CheckReport:
                        return CheckReport.compare(
                            name,
                            moment_scalar(l, p.conjugate(), route).value,
                            moment_scalar(l, p, route).value.conjugate(),
                            "conjugation-symmetry")

                    reports.append(_guarded(name, "conjugation-symmetry", run))
    return reports


# ----------------------------------------------------------------------
# Suite
# ----------------------------------------------------------------------

def _family_runners(config: VerifyConfig) -> Dict[str, Callable[[], List[CheckReport]]]:
    spec = config.quadrature
    return {
        "table-integral": lambda: [check_table_integral(h, spec) for h in config.table_h],
        "generating-function": lambda: check_generating_function(config),
        "moment-routes": lambda: check_moment_routes(config.moment_l_max, config.moment_gammas, spec),
        "singular-identity": lambda: check_singular_identity(spec),
        "radial-functional": lambda: _radial_reports(config),
        "linear-bessel": lambda: check_linear_variant_bessel(config.bessel_l_max, config.bessel_gamma),
        "ki1-representations": lambda: check_ki1(config.ki1_points),
        "distribution-maxima": lambda: [check_figure1(g) for g in config.maxima_gammas],
        "decay-rate": lambda: check_decay(config.decay_window),
        "measure-norm": lambda: [check_measure_norm(spec)],
        "conjugation-symmetry": lambda: check_conjugation_symmetry(),
    }


def run_all(config: Optional[VerifyConfig] = None) -> List[CheckReport]:
    """Run the selected check families; reports come back sorted by name."""
    config = VerifyConfig() if config is None else config
    selected = CHECK_FAMILIES if config.only is None else tuple(config.only)
    runners = _family_runners(config)

    reports: List[CheckReport] = []
    for family in selected:
        batch = runners[family]()
        failed = sum(not r.passed for r in batch)
        logger.info("%s: %d checks, %d failed", family, len(batch), failed)
        reports.extend(batch)
    return sorted(reports, key=lambda r: r.name)


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------

def _finite_or_none(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


def report_record(r: CheckReport) -> Dict[str, Any]:
    return {
        "name": r.name,
        "lhs": [_finite_or_none(r.lhs.real), _finite_or_none(r.lhs.imag)],
        "rhs": [_finite_or_none(r.rhs.real), _finite_or_none(r.rhs.imag)],
        "abs_err": _finite_or_none(r.abs_err),
        "rel_err": _finite_or_none(r.rel_err),
        "tolerance": r.tolerance,
        "policy": r.policy.value,
        "passed": r.passed,
        "detail": r.detail,
    }


def reports_to_frame(reports: Sequence[CheckReport]) -> pd.DataFrame:
    rows = [
        {
            "name": r.name,
            "lhs_re": r.lhs.real,
            "lhs_im": r.lhs.imag,
            "rhs_re": r.rhs.real,
            "rhs_im": r.rhs.imag,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
            "tolerance": r.tolerance,
            "policy": r.policy.value,
            "passed": r.passed,
            "detail": r.detail,
        }
        for r in reports
    ]
    columns = ["name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "tolerance", "policy", "passed", "detail"]
    return pd.DataFrame(rows, columns=columns)


def reports_to_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([report_record(r) for r in reports], indent=2)


def format_reports(reports: Sequence[CheckReport]) -> str:
    """One line per check: PASS/FAIL/INFO, name, errors and tolerance."""
    lines = []
    for r in reports:
        status = "INFO" if r.policy is TolerancePolicy.INFO else ("PASS" if r.passed else "FAIL")
        lines.append(
            f"{status:4} {r.name}  abs={r.abs_err:.3e} rel={r.rel_err:.3e} "
            f"tol={r.tolerance:.1e} ({r.policy.value})" + (f"  {r.detail}" if r.detail and not r.passed else "")
        )
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines)


def write_reports(reports: Sequence[CheckReport], out_dir: Path) -> Tuple[Path, Path]:
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "verification_report.csv"
    json_path = out_dir / "verification_report.json"

    reports_to_frame(reports).to_csv(csv_path, index=False, float_format="%.17g")
    json_path.write_text(reports_to_json(reports) + "\n", encoding="utf-8")

    return csv_path, json_path
