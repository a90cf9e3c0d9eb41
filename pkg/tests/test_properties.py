"""Property checks over random parameters (hypothesis, derandomized)."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from regge_moments.closed_form import log_arcsin_from_w, log_arcsin_kernel, sample_distribution
from regge_moments.series_core import derivative_at_zero, from_coefficients, series_add, series_mul, working_order
from regge_moments.spectral_moments import (
    ADMISSIBILITY_TOL,
    ModelParams,
    ProbePolynomial,
    Route,
    Variant,
    available_routes,
    moment_scalar,
    singular_coefficients,
    singular_part,
    unrescaled_generator,
)

PROPERTY_SETTINGS = settings(derandomize=True, max_examples=200, deadline=None)
QUADRATURE_SETTINGS = settings(derandomize=True, max_examples=20, deadline=None)

gammas = st.floats(min_value=0.05, max_value=20.0, allow_nan=False, allow_infinity=False)
variants = st.sampled_from(list(Variant))
small_l = st.integers(min_value=0, max_value=4)
coords = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)


@PROPERTY_SETTINGS
@given(gamma=gammas, variant=variants, l=small_l)
def test_odd_derivatives_vanish_exactly(gamma, variant, l):
    order = working_order(l)
    g = unrescaled_generator(ModelParams(gamma=gamma, variant=variant), order)
    for k in range(1, order + 1, 2):
        assert derivative_at_zero(g, k) == 0


@PROPERTY_SETTINGS
@given(gamma=gammas, variant=variants, l=small_l)
def test_conjugate_sector_is_complex_conjugate(gamma, variant, l):
    p = ModelParams(gamma=gamma, variant=variant)
    for route in available_routes(variant):
        if route is Route.RADIAL_QUADRATURE:
            continue
        hol = moment_scalar(l, p, route).value
        anti = moment_scalar(l, p.conjugate(), route).value
        assert abs(anti - hol.conjugate()) <= 1e-12 * abs(hol)


@QUADRATURE_SETTINGS
@given(gamma=st.floats(min_value=0.3, max_value=3.0), variant=variants, l=st.integers(min_value=0, max_value=1))
def test_conjugate_sector_on_the_radial_route(gamma, variant, l):
    p = ModelParams(gamma=gamma, variant=variant)
    hol = moment_scalar(l, p, Route.RADIAL_QUADRATURE).value
    anti = moment_scalar(l, p.conjugate(), Route.RADIAL_QUADRATURE).value
    assert abs(anti - hol.conjugate()) <= 1e-12 * abs(hol)


@PROPERTY_SETTINGS
@given(gamma=st.floats(min_value=0.1, max_value=10.0), vsq=coords)
def test_arcsin_density_is_positive(gamma, vsq):
    (sample,) = sample_distribution([vsq], gamma)
    assert sample.n_value > 0
    assert math.isfinite(sample.n_value)


@PROPERTY_SETTINGS
@given(re=coords, im=coords)
def test_density_does_not_depend_on_branch_sign(re, im):
    w = np.array([complex(re, im)])
    np.testing.assert_array_equal(log_arcsin_kernel(w), log_arcsin_kernel(-w))
    np.testing.assert_array_equal(log_arcsin_from_w(w), log_arcsin_kernel(w))


@PROPERTY_SETTINGS
@given(gamma=gammas, root_re=st.floats(-10.0, 10.0), root_im=st.floats(-10.0, 10.0))
def test_admissible_probes_have_no_singular_part(gamma, root_re, root_im):
    p = ModelParams(gamma=gamma)
    probe = ProbePolynomial.from_factors(p, extra_roots=[complex(root_re, root_im)])
    assert probe.admissible
    coeffs = singular_coefficients(0, p)
    bound = ADMISSIBILITY_TOL * (abs(coeffs.a) + abs(coeffs.b)) * max(probe.size_at(p.x0), 1.0)
    assert abs(singular_part(probe, p)) <= bound


@PROPERTY_SETTINGS
@given(
    a=st.lists(st.floats(-5.0, 5.0), min_size=4, max_size=4),
    b=st.lists(st.floats(-5.0, 5.0), min_size=4, max_size=4),
)
def test_series_arithmetic_commutes(a, b):
    sa, sb = from_coefficients(a), from_coefficients(b)
    np.testing.assert_array_equal(series_add(sa, sb).coeffs, series_add(sb, sa).coeffs)
    np.testing.assert_allclose(series_mul(sa, sb).coeffs, series_mul(sb, sa).coeffs, rtol=1e-15, atol=1e-12)
