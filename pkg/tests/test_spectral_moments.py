import math

import numpy as np
import pytest
from pydantic import ValidationError

from regge_moments import spectral_moments
from regge_moments.errors import DomainError, InsufficientOrderError, OrderOverflowError
from regge_moments.spectral_moments import (
    ModelParams,
    ProbePolynomial,
    Route,
    SingularCoefficients,
    Variant,
    factorized_moment,
    moment_of_polynomial,
    moment_prefactor,
    moment_scalar,
    radial_functional,
    regular_part,
    singular_coefficients,
    singular_part,
    table_moment_integral,
)

ARCSIN_ROUTES = [Route.SERIES_UNRESCALED, Route.INTEGRAL_REP, Route.RADIAL_QUADRATURE]
ROUTE_TOL = {Route.SERIES_UNRESCALED: 1e-10, Route.INTEGRAL_REP: 1e-8, Route.RADIAL_QUADRATURE: 1e-6}


def test_lowest_moment_at_gamma_one():
    """(2/(1+i))^3 = -2 - 2i and G''(0) = -1/2 give pi (1 + i)."""
    for variant in Variant:
        value = moment_scalar(0, ModelParams(gamma=1.0, variant=variant)).value
        assert abs(value - math.pi * (1 + 1j)) < 1e-12, f"{variant.value}: {value}"


def test_large_gamma_limit():
    value = moment_scalar(0, ModelParams(gamma=1e8)).value
    assert value == pytest.approx(-4.0 * math.pi, rel=1e-7)


@pytest.mark.parametrize("route", ARCSIN_ROUTES)
@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_arcsin_routes_agree(route, l):
    p = ModelParams(gamma=1.0)
    ref = moment_scalar(l, p).value
    got = moment_scalar(l, p, route)
    assert got.route is route and got.l == l
    assert abs(got.value - ref) <= ROUTE_TOL[route] * abs(ref), f"{route.value} l={l}: {got.value} vs {ref}"


@pytest.mark.parametrize("gamma", [0.1, 0.5, 2.0, 10.0])
def test_series_routes_agree_for_both_variants(gamma):
    for variant in Variant:
        p = ModelParams(gamma=gamma, variant=variant)
        for l in range(5):
            a = moment_scalar(l, p, Route.SERIES_RESCALED).value
            b = moment_scalar(l, p, Route.SERIES_UNRESCALED).value
            assert abs(a - b) <= 1e-10 * abs(a), f"{variant.value} gamma={gamma} l={l}"


def test_linear_radial_route_matches_series_at_lowest_moment():
    p = ModelParams(gamma=1.0, variant=Variant.LINEAR)
    series = moment_scalar(0, p).value
    radial = moment_scalar(0, p, Route.RADIAL_QUADRATURE).value
    assert abs(radial - series) <= 1e-6 * abs(series)


def test_integral_route_is_arcsin_only():
    with pytest.raises(DomainError):
        moment_scalar(0, ModelParams(gamma=1.0, variant=Variant.LINEAR), Route.INTEGRAL_REP)


def test_conjugate_sector_conjugates_moments():
    p = ModelParams(gamma=0.7)
    for l in range(4):
        hol = moment_scalar(l, p).value
        anti = moment_scalar(l, p.conjugate()).value
        assert abs(anti - hol.conjugate()) <= 1e-12 * abs(hol)
    assert p.conjugate().conjugate() == p


def test_prefactor_matches_closed_power():
    p = ModelParams(gamma=0.3)
    for l in range(6):
        direct = math.pi * (-1) ** l * (2.0 / p.scale) ** (2 * l + 3)
        assert abs(moment_prefactor(l, p) - direct) <= 1e-13 * abs(direct)


def test_params_validation():
    with pytest.raises(ValidationError):
        ModelParams(gamma=0.0)
    with pytest.raises(ValidationError):
        ModelParams(gamma=float("inf"))
    with pytest.raises(ValueError):
        moment_scalar(-1, ModelParams(gamma=1.0))


def test_order_below_requirement_is_an_error():
    with pytest.raises(InsufficientOrderError):
        moment_scalar(2, ModelParams(gamma=1.0), Route.SERIES_UNRESCALED, order=4)


@pytest.mark.parametrize("route", [Route.SERIES_RESCALED, Route.SERIES_UNRESCALED])
def test_moment_index_past_double_range_is_an_error(route):
    with pytest.raises(OrderOverflowError):
        moment_scalar(85, ModelParams(gamma=1.0), route)


def test_lowest_table_integral():
    assert table_moment_integral(3) == pytest.approx(0.75 - math.log(2.0), abs=1e-10)
    with pytest.raises(DomainError):
        table_moment_integral(0)


def test_first_singular_point():
    p = ModelParams(gamma=1.0)
    assert abs(p.x0 - (-2j)) < 1e-15
    assert abs(p.x0 - (2.0 / p.scale) ** 2) < 1e-15


def test_moment_splits_into_regular_and_singular_parts():
    for gamma in (0.5, 1.0, 3.0):
        p = ModelParams(gamma=gamma)
        sc = singular_coefficients(0, p)
        for l in range(4):
            mono = ProbePolynomial.monomial(l, p)
            rebuilt = regular_part(l, p) + sc.apply(mono.value_at(p.x0), mono.slope_at(p.x0))
            ref = moment_scalar(l, p).value
            assert abs(rebuilt - ref) <= 1e-8 * abs(ref), f"gamma={gamma} l={l}"


def test_singular_coefficients_do_not_depend_on_l():
    p = ModelParams(gamma=2.0)
    first = singular_coefficients(0, p)
    assert singular_coefficients(5, p) == first
    linear = singular_coefficients(3, ModelParams(gamma=2.0, variant=Variant.LINEAR))
    assert linear.a == 0 and linear.b == 0


def test_probe_admissibility():
    p = ModelParams(gamma=1.5)
    probe = ProbePolynomial.from_factors(p, extra_roots=[1.0, -2.0j])
    assert probe.admissible
    assert probe.degree == 4
    coeffs = singular_coefficients(0, p)
    bound = 1e-10 * (abs(coeffs.a) + abs(coeffs.b)) * max(probe.size_at(p.x0), 1.0)
    assert abs(singular_part(probe, p)) <= bound
    mono = ProbePolynomial.monomial(2, p)
    assert not mono.admissible
    assert singular_part(mono, p) != 0
    assert singular_part(mono, ModelParams(gamma=1.5, variant=Variant.LINEAR)) == 0


def test_singular_part_is_evaluated_for_admissible_polynomials(monkeypatch):
    p = ModelParams(gamma=1.5)
    probe = ProbePolynomial.from_factors(p, extra_roots=[1.0])
    f0, df0 = probe.value_at(p.x0), probe.slope_at(p.x0)
    inflated = SingularCoefficients(1e6, 1e6, p.x0)
    monkeypatch.setattr(spectral_moments, "singular_coefficients", lambda l, params: inflated)
    assert singular_part(probe, p) == 1e6 * f0 + 1e6 * df0


def test_radial_functional_of_admissible_probe_equals_moment():
    p = ModelParams(gamma=1.0)
    probe = ProbePolynomial.from_factors(p)
    series = moment_of_polynomial(probe)
    radial = radial_functional(probe, p).value
    assert abs(radial - series) <= 1e-6 * abs(series)


def test_radial_functional_misses_exactly_the_singular_part():
    p = ModelParams(gamma=1.0)
    mono = ProbePolynomial.monomial(1, p)
    gap = moment_of_polynomial(mono) - radial_functional(mono, p).value
    expected = singular_part(mono, p)
    assert abs(gap - expected) <= 1e-6 * abs(expected)


def test_zero_probe_and_linearity():
    p = ModelParams(gamma=1.0)
    zero = ProbePolynomial([0.0, 0.0], p)
    assert moment_of_polynomial(zero) == 0
    assert radial_functional(zero, p).value == 0

    f = ProbePolynomial([2.0, -1.0j, 0.5], p)
    expected = sum(c * moment_scalar(l, p).value for l, c in enumerate(f.coeffs))
    assert abs(moment_of_polynomial(f) - expected) < 1e-12 * abs(expected)


def test_factorized_moment():
    p = ModelParams(gamma=2.0)
    diag = factorized_moment(1, 1, p)
    assert diag.imag == 0.0
    assert diag.real == pytest.approx(abs(moment_scalar(1, p).value) ** 2 / 8.0, rel=1e-14)
    off = factorized_moment(0, 2, p)
    assert off == pytest.approx(factorized_moment(2, 0, p).conjugate(), rel=1e-14)
    np.testing.assert_allclose(
        off, moment_scalar(0, p).value * moment_scalar(2, p).value.conjugate() / 8.0, rtol=1e-14
    )
