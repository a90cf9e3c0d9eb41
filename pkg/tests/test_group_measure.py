import math

import numpy as np
import pytest

from regge_moments import group_measure
from regge_moments.errors import DomainError
from regge_moments.group_measure import (
    MEASURE_NORM_EXACT,
    RotationVector,
    dr_density,
    i_tilde_closed,
    i_tilde_quadrature,
    i_tilde_series,
    measure_norm,
)
from regge_moments.series_core import evaluate


def test_density_is_finite_at_identity():
    assert dr_density([0.0, 0.0, 0.0]) == pytest.approx(1.0 / (16.0 * math.pi**2), rel=1e-15)


def test_density_matches_direct_form():
    r = RotationVector(0.3, -0.2, 0.4)
    rho2 = r.norm**2
    direct = (1.0 / math.sqrt(1.0 - rho2) - 1.0) / (8.0 * math.pi**2 * rho2)
    assert dr_density(r) == pytest.approx(direct, rel=1e-13)


def test_density_outside_open_ball_is_rejected():
    with pytest.raises(DomainError):
        dr_density([1.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        RotationVector(1.0, 1.0, 0.0)


def test_axis_angle_lands_in_unit_ball():
    r = RotationVector.from_axis_angle([0.0, 3.0, 4.0], 0.7)
    assert r.norm == pytest.approx(abs(math.sin(0.7)), rel=1e-15)
    with pytest.raises(DomainError):
        RotationVector.from_axis_angle([0.0, 0.0, 0.0], 0.7)


def test_measure_norm_by_quadrature():
    assert measure_norm() == pytest.approx(MEASURE_NORM_EXACT, abs=1e-11)
    assert MEASURE_NORM_EXACT == pytest.approx((math.pi - 2.0) / (4.0 * math.pi), rel=1e-15)


def test_measure_norm_integrates_the_density(monkeypatch):
    density = group_measure._radial_density
    monkeypatch.setattr(group_measure, "_radial_density", lambda rho: 2.0 * density(rho))
    assert measure_norm() == pytest.approx(2.0 * MEASURE_NORM_EXACT, abs=1e-11)


@pytest.mark.parametrize("z", [0.1, 0.5, 0.9, -0.6])
def test_generating_function_reduction_matches_closed_form(z):
    closed = i_tilde_closed(z)
    assert abs(closed.imag) < 1e-15
    assert i_tilde_quadrature(z) == pytest.approx(closed.real, abs=1e-10)


def test_generating_function_edges():
    assert i_tilde_quadrature(0.0) == 0.0
    assert i_tilde_closed(0.0) == 0
    assert i_tilde_closed(1.0).real == pytest.approx(-2.0 * math.pi * math.log(2.0), rel=1e-15)
    with pytest.raises(DomainError):
        i_tilde_quadrature(1.5)


def test_generating_function_series():
    s = i_tilde_series(8)
    np.testing.assert_allclose(s.coeffs[:5], [0, 0, -math.pi / 2, 0, -3 * math.pi / 16], atol=1e-15)
    assert evaluate(i_tilde_series(14), 0.1) == pytest.approx(i_tilde_closed(0.1), rel=1e-10)
