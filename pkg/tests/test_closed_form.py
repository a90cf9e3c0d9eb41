import math

import numpy as np
import pytest

from regge_moments.closed_form import (
    AreaSquared,
    Region,
    branch_w,
    decay_rate,
    distribution,
    distribution_arcsin,
    distribution_linear,
    local_maxima,
    log_arcsin_from_w,
    log_arcsin_kernel,
    log_distribution,
    sample_distribution,
    singular_points,
)
from regge_moments.errors import DivergenceError, DomainError, SingularPointError
from regge_moments.special import csch, ki1, ki1_asymptotic, ki1_k0_ray
from regge_moments.spectral_moments import Variant


# ----------------------------------------------------------------------
# Ki1
# ----------------------------------------------------------------------

def test_ki1_near_origin():
    assert ki1(1e-8) == pytest.approx(math.pi / 2.0, abs=1e-6)


@pytest.mark.parametrize("x", [0.5, 1.0, 5.0, complex(1.0, -1.0), complex(0.3, 2.0)])
def test_ki1_representations_agree(x):
    a = ki1(x)
    b = ki1_k0_ray(x)
    assert abs(a - b) <= 1e-10 * abs(a)


def test_ki1_large_argument():
    assert ki1(30.0) == pytest.approx(ki1_asymptotic(30.0), rel=5e-3)


def test_ki1_types_and_domain():
    assert isinstance(ki1(2.0), float)
    assert isinstance(ki1(complex(2.0, 1.0)), complex)
    with pytest.raises(DomainError):
        ki1(-1.0)
    with pytest.raises(DomainError):
        ki1(complex(0.0, 3.0))


def test_csch_is_stable():
    z = np.array([0.3, -0.3, 1.0 + 2.0j])
    np.testing.assert_allclose(csch(z), 1.0 / np.sinh(z), rtol=1e-14)
    far = csch(np.array([800.0, -800.0]))
    assert np.all(np.isfinite(far))


# ----------------------------------------------------------------------
# Branch and singular points
# ----------------------------------------------------------------------

def test_singular_points_at_gamma_one():
    points = singular_points(1.0, 3)
    assert [pt.n for pt in points] == [1, 2, 3]
    assert [pt.order for pt in points] == [2, 1, 1]
    assert abs(points[0].location - (-2j)) < 1e-15
    assert abs(points[2].location - (-18j)) < 1e-13


def test_singular_points_are_rejected():
    with pytest.raises(SingularPointError) as excinfo:
        distribution_arcsin(-2j, 1.0)
    assert excinfo.value.n == 1
    with pytest.raises(SingularPointError):
        distribution_arcsin(-8j * (1 + 1e-12), 1.0)
    # A relative offset of 1e-6 is far enough.
    assert math.isfinite(distribution_arcsin(-2j * (1 + 1e-6), 1.0))


def test_branch_choice():
    for vsq in (4.0, -4.0, 2.5j, -1.0 - 1.0j):
        w = branch_w(vsq, 0.7)
        assert w.real > 0 or (w.real == 0 and w.imag >= 0)
        assert abs(w * w - complex(1 / 0.7, -1) ** 2 * vsq) < 1e-12
    with pytest.raises(DomainError):
        branch_w(1.0, 0.0)


def test_log_density_is_even_in_w():
    w = np.array([0.3 + 0.1j, 2.0 - 5.0j, 1e-5j, 400.0 + 3.0j, -7.0])
    np.testing.assert_array_equal(log_arcsin_kernel(w), log_arcsin_kernel(-w))


def test_canonical_branch_agrees_with_the_kernel():
    w = np.array([-0.3 - 0.1j, -2.0 + 5.0j, -1e-5j, 7.0])
    canonical = np.array([0.3 + 0.1j, 2.0 - 5.0j, 1e-5j, 7.0])
    np.testing.assert_array_equal(log_arcsin_from_w(w), log_arcsin_kernel(canonical))


def test_area_squared():
    assert AreaSquared(4.0).region is Region.TIMELIKE
    assert AreaSquared(-9.0).region is Region.SPACELIKE
    assert AreaSquared(0.0).region is None
    assert AreaSquared(1j).region is None
    assert AreaSquared.from_area(3.0, "spacelike").vsq == -9.0
    assert AreaSquared(-9.0).area_abs == 3.0


# ----------------------------------------------------------------------
# Density
# ----------------------------------------------------------------------

@pytest.mark.parametrize("gamma", [0.05, 0.5, 1.0, 10.0])
def test_normalized_intercept(gamma):
    assert (2.0 * math.pi) ** 2 * distribution_arcsin(0.0, gamma) == pytest.approx(1.0, abs=1e-12)


def test_density_matches_direct_formula_away_from_origin():
    gamma, vsq = 1.3, -2.0
    w = branch_w(vsq, gamma)
    direct = abs((w / 4.0) / ((w * w / 4.0 + 1.0) * np.sinh(math.pi * w / 2.0))) ** 2
    assert distribution_arcsin(vsq, gamma) == pytest.approx(direct, rel=1e-12)


def test_density_is_continuous_across_small_argument_switch():
    gamma = 1.0
    edge = (2e-3 / math.pi / abs(complex(1.0, -1.0))) ** 2
    below = distribution_arcsin(edge * (1 - 1e-9), gamma)
    above = distribution_arcsin(edge * (1 + 1e-9), gamma)
    assert below == pytest.approx(above, rel=1e-10)


def test_linear_density():
    with pytest.raises(DivergenceError):
        distribution_linear(0.0, 1.0)
    w = branch_w(3.0, 1.0)
    direct = abs(ki1(w / 2.0) / (math.pi * w)) ** 2
    assert distribution(3.0, 1.0, "linear") == pytest.approx(direct, rel=1e-10)


def test_samples_keep_grid_order_and_are_positive():
    grid = np.linspace(-10.0, 10.0, 21)
    samples = sample_distribution(grid, 2.0)
    assert [s.vsq for s in samples] == list(grid)
    assert all(s.n_value > 0 for s in samples)
    assert samples[10].scaled == pytest.approx(1.0, abs=1e-12)

    linear = sample_distribution([-1.0, 0.0, 1.0], 2.0, Variant.LINEAR)
    assert math.isinf(linear[1].n_value)
    assert linear[0].n_value > 0


def test_deep_tail_stays_in_log_space():
    logn = log_distribution([-1e6], 0.5)
    assert np.isfinite(logn[0]) and logn[0] < -1000


# ----------------------------------------------------------------------
# Maxima and decay
# ----------------------------------------------------------------------

def test_timelike_maxima_for_large_gamma():
    maxima = local_maxima(10.0, 0.0, 44.0)
    areas = [math.sqrt(v) for v in sorted(maxima)[:3]]
    for area, nominal in zip(areas, (2.0, 4.0, 6.0)):
        assert abs(area - nominal) <= 0.05 * nominal, areas
    heights = [distribution_arcsin(a * a, 10.0) for a in areas]
    assert heights[0] > heights[1] > heights[2]


def test_spacelike_maxima_for_small_gamma():
    gamma = 0.05
    maxima = sorted(local_maxima(gamma, -4.0 * gamma**2 * 12.0, 0.0), key=abs)[:3]
    areas = [math.sqrt(-v) for v in maxima]
    for n, area in enumerate(areas, start=1):
        assert abs(area - 2.0 * gamma * n) <= 0.05 * 2.0 * gamma * n, areas


@pytest.mark.parametrize("n", [1, 2, 3])
def test_spacelike_maxima_count(n):
    gamma = 0.05
    assert len(local_maxima(gamma, -4.0 * gamma**2 * (n + 0.5) ** 2, 0.0)) == n


def test_no_maxima_on_a_monotone_range():
    assert local_maxima(10.0, 50.0, 60.0) == []


def test_local_maxima_rejects_empty_range():
    with pytest.raises(ValueError):
        local_maxima(1.0, 5.0, 5.0)


def test_decay_window_shrinks_before_underflow():
    fit = decay_rate(2.0, Region.SPACELIKE, Variant.ARCSIN, window=(200.0, 260.0))
    assert fit.shrunk
    assert fit.window[0] == 200.0
    assert fit.window[1] < 230.0
    assert fit.relative_error <= 0.03, fit


def test_decay_window_that_underflows_immediately_is_an_error():
    with pytest.raises(DomainError):
        decay_rate(2.0, Region.SPACELIKE, Variant.ARCSIN, window=(300.0, 400.0))


@pytest.mark.parametrize(
    "gamma, region, variant, expected",
    [
        (2.0, Region.SPACELIKE, Variant.ARCSIN, math.pi),
        (2.0, Region.TIMELIKE, Variant.ARCSIN, math.pi / 2.0),
        (1.0, Region.SPACELIKE, Variant.LINEAR, 1.0),
    ],
)
def test_decay_rates(gamma, region, variant, expected):
    fit = decay_rate(gamma, region, variant)
    assert fit.expected == pytest.approx(expected)
    assert fit.relative_error <= 0.03, fit
    assert not fit.shrunk


@pytest.mark.parametrize("gamma", [0.05, 1.0, 10.0])
def test_density_stays_finite_on_wide_real_range(gamma):
    grid = np.linspace(-1e4, 1e4, 2001)
    values = np.array([s.n_value for s in sample_distribution(grid, gamma)])
    assert np.all(np.isfinite(values))
    assert np.all(values >= 0)
