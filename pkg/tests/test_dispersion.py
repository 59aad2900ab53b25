import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from peridispersion.dispersion import (
    MaterialParams,
    dispersion_table,
    group_velocity,
    high_freq_closed_form,
    high_freq_coefficient,
    high_freq_quadrature,
    large_scale_group_velocity,
    low_freq_coefficient,
    omega,
    omega_squared,
)

UNIT = MaterialParams(1.0, 1.0, 1.0, 0.5)


def brute_force_omega_sq_3d(xi, alpha=0.5, n=10**6):
    # trapezoid on the unscaled form 8 pi int_0^1 (1 - j0(xi z)) z^(-1 - 2 alpha) dz
    z = np.linspace(0.0, 1.0, n + 1)
    x = xi * z
    safe = np.where(x == 0, 1.0, x)
    one_minus = np.where(x == 0, 0.0, 1.0 - np.sin(safe) / safe)
    f = np.zeros_like(z)
    f[1:] = one_minus[1:] * z[1:] ** (-1 - 2 * alpha)
    f[0] = xi**2 / 6.0 if alpha == 0.5 else 0.0
    return 8 * np.pi * np.trapezoid(f, z)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_zero_wavenumber(dim):
    assert omega_squared(dim, UNIT, 0.0) == 0.0
    assert omega(dim, UNIT, 0.0) == 0.0


def test_low_frequency_example_2d():
    xi = 1e-3
    assert omega_squared(2, UNIT, xi) == pytest.approx(np.pi * xi**2, rel=1e-3)


def test_brute_force_3d():
    assert omega_squared(3, UNIT, 1.0) == pytest.approx(brute_force_omega_sq_3d(1.0), rel=1e-8)


@pytest.mark.parametrize("xi", [0.1, 1.0, 10.0])
def test_omega_is_sqrt(xi):
    for dim in (1, 2, 3):
        assert omega(dim, UNIT, xi) ** 2 == pytest.approx(omega_squared(dim, UNIT, xi), rel=1e-15)


def test_high_frequency_1d_example():
    xi = 1e3
    assert omega(1, UNIT, xi) == pytest.approx(math.sqrt(2 * math.pi * xi), rel=1e-2)


@pytest.mark.parametrize("dim,expected", [(1, 2.0), (2, np.pi), (3, 4 * np.pi / 3)])
def test_low_freq_coefficient(dim, expected):
    assert low_freq_coefficient(dim, UNIT) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("dim,expected", [(1, 2 * np.pi), (2, 4 * np.pi), (3, 2 * np.pi**2)])
def test_high_freq_coefficient_at_half(dim, expected):
    assert high_freq_coefficient(dim, UNIT) == pytest.approx(expected, abs=1e-6)


def test_high_freq_closed_form_continuous_through_half():
    # the fallback window must join the Gamma forms smoothly
    for dim in (1, 2, 3):
        lo = high_freq_closed_form(dim, MaterialParams(alpha=0.5 - 2e-3))
        hi = high_freq_closed_form(dim, MaterialParams(alpha=0.5 + 2e-3))
        mid = high_freq_coefficient(dim, UNIT)
        assert 0.5 * (lo + hi) == pytest.approx(mid, rel=1e-4)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.7, 0.9])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_closed_form_matches_quadrature(dim, alpha):
    p = MaterialParams(alpha=alpha)
    assert high_freq_closed_form(dim, p) == pytest.approx(high_freq_quadrature(dim, p), rel=1e-6)


@pytest.mark.parametrize(
    "dim,alpha,expected",
    [(2, 0.9, 3.96), (2, 0.5, 1.77), (2, 0.1, 1.32), (3, 0.9, 4.58), (3, 0.5, 2.05), (3, 0.1, 1.53)],
)
def test_large_scale_group_velocity_tables(dim, alpha, expected):
    p = MaterialParams(alpha=alpha)
    assert large_scale_group_velocity(dim, p) == pytest.approx(expected, rel=1e-2)
    assert group_velocity(dim, p, 0.0) == pytest.approx(expected, rel=1e-2)


def test_large_scale_group_velocity_1d():
    assert large_scale_group_velocity(1, UNIT) == pytest.approx(math.sqrt(2), rel=1e-15)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_group_velocity_tends_to_large_scale(dim):
    p = MaterialParams(alpha=0.7)
    assert group_velocity(dim, p, 1e-3) == pytest.approx(large_scale_group_velocity(dim, p), rel=1e-5)


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("xi", [0.3, 2.0, 40.0])
def test_group_velocity_matches_fine_difference(dim, xi):
    h = 1e-3 * xi
    ref = (omega(dim, UNIT, xi + h) - omega(dim, UNIT, xi - h)) / (2 * h)
    assert group_velocity(dim, UNIT, xi) == pytest.approx(ref, rel=1e-5)


def test_high_frequency_group_velocity_power_law():
    # omega ~ sqrt(c) xi^alpha gives v_g ~ alpha sqrt(c) xi^(alpha - 1)
    p = MaterialParams(alpha=0.9)
    xi = 1e4
    c = high_freq_coefficient(2, p)
    assert group_velocity(2, p, xi) == pytest.approx(0.9 * math.sqrt(c) * xi ** (-0.1), rel=2e-2)


@given(
    dim=st.sampled_from([1, 2, 3]),
    alpha=st.floats(0.02, 0.98),
    xi=st.floats(0.0, 1e5),
)
@settings(max_examples=80, deadline=None)
def test_nonnegative(dim, alpha, xi):
    assert omega_squared(dim, MaterialParams(alpha=alpha), xi) >= 0.0


@given(
    dim=st.sampled_from([1, 2, 3]),
    alpha=st.floats(0.05, 0.95),
    X=st.floats(1e-3, 1e3),
    d1=st.floats(0.1, 10.0),
    d2=st.floats(0.1, 10.0),
)
@settings(max_examples=60, deadline=None)
def test_scaling_collapse(dim, alpha, X, d1, d2):
    p1, p2 = MaterialParams(delta=d1, alpha=alpha), MaterialParams(delta=d2, alpha=alpha)
    a = d1 ** (2 * alpha) * omega_squared(dim, p1, X / d1)
    b = d2 ** (2 * alpha) * omega_squared(dim, p2, X / d2)
    assert a == pytest.approx(b, rel=1e-10)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_asymptotic_convergence_monotone(dim, alpha):
    p = MaterialParams(alpha=alpha)
    low = low_freq_coefficient(dim, p)
    high = high_freq_coefficient(dim, p)
    e_low = [abs(omega_squared(dim, p, x) / x**2 - low) / low for x in (1e-2, 1e-3)]
    e_high = [abs(omega_squared(dim, p, x) / x ** (2 * alpha) - high) / high for x in (1e3, 1e4)]
    assert e_low[1] < e_low[0]
    assert e_high[1] < e_high[0]


def test_dimensional_ordering():
    for alpha in np.linspace(0.05, 0.95, 19):
        p = MaterialParams(alpha=float(alpha))
        c = [high_freq_coefficient(dim, p) for dim in (1, 2, 3)]
        assert c[0] < c[1] < c[2], (alpha, c)


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.5, 0.8, 0.95])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_series_quadrature_overlap(dim, alpha):
    p = MaterialParams(alpha=alpha)
    xi = np.linspace(0.5, 2.0, 31)
    assert_allclose(
        omega_squared(dim, p, xi, method="series"), omega_squared(dim, p, xi, method="quadrature"), rtol=1e-9
    )


def test_vectorised_matches_scalar():
    xi = np.array([0.0, 0.2, 1.0, 1.5, 80.0, 5e3])
    vec = omega_squared(2, UNIT, xi)
    assert_array_equal(vec, [omega_squared(2, UNIT, x) for x in xi])


def test_material_params_validation():
    for bad in (dict(alpha=0.0), dict(alpha=1.0), dict(kappa=0.0), dict(rho=-1.0), dict(delta=np.inf)):
        with pytest.raises(ValueError):
            MaterialParams(**bad)


def test_input_errors():
    with pytest.raises(ValueError):
        omega_squared(2, UNIT, -1.0)
    with pytest.raises(ValueError):
        omega_squared(4, UNIT, 1.0)
    with pytest.raises(ValueError):
        omega_squared(2, UNIT, 10.0, method="series")
    with pytest.raises(ValueError):
        omega_squared(2, UNIT, 1.0, method="spline")


def test_table_single_zero_row():
    t = dispersion_table(2, UNIT, [0.0])
    assert t.rows() == [(0.0, 0.0, 0.0, math.sqrt(np.pi))]


def test_table_limits():
    p = MaterialParams(alpha=0.5)
    t = dispersion_table(2, p, [1e-3, 1e3])
    assert t.omega_sq[0] / t.xi[0] ** 2 == pytest.approx(np.pi, rel=1e-3)
    assert t.omega_sq[1] / t.xi[1] == pytest.approx(4 * np.pi, rel=1e-2)


def test_table_omega_column_exact():
    t = dispersion_table(3, MaterialParams(alpha=0.3), np.geomspace(1e-3, 1e4, 50))
    assert_array_equal(t.omega, np.sqrt(t.omega_sq))


def test_table_rejects_bad_grids():
    with pytest.raises(ValueError):
        dispersion_table(2, UNIT, [1.0, 0.5])
    with pytest.raises(ValueError):
        dispersion_table(2, UNIT, [1.0, 1.0])
    with pytest.raises(ValueError):
        dispersion_table(2, UNIT, [-1.0, 1.0])


def test_table_csv():
    t = dispersion_table(1, UNIT, [0.0, 0.1, 2.0])
    buf = io.StringIO()
    t.to_csv(buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == "xi,omega_sq,omega,vg"
    assert len(lines) == 5 and lines[-1] == ""
    row = [float(v) for v in lines[2].split(",")]
    assert row == [0.1, t.omega_sq[1], t.omega[1], t.group_velocity[1]]
    assert "\r" not in buf.getvalue()
