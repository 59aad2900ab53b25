import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from peridispersion.initial_conditions import (
    DIPOLE_AMPLITUDE,
    MultipoleSet,
    RadialProfile,
    dipole_field,
    dipole_initial_condition,
    gaussian_profile,
    gaussian_spectrum,
    multipole_decompose,
    radial_spectrum,
)
from peridispersion.special import DomainError, spherical_harmonic


def test_gaussian_profile_values():
    assert gaussian_profile(1.0, 2)(0.0) == pytest.approx(2 * np.pi)
    assert gaussian_profile(1.0, 3)(0.0) == pytest.approx((2 * np.pi) ** 1.5)
    for sigma in (0.1, 1.0, 3.0):
        h = gaussian_profile(sigma, 1)
        assert h(sigma) == pytest.approx(math.exp(-0.5) * h(0.0), rel=1e-15)


def test_gaussian_spectrum_values():
    for dim in (1, 2, 3):
        assert gaussian_spectrum(1.0, dim)(0.0) == 1.0
    assert gaussian_spectrum(0.1, 3)(0.0) == pytest.approx(1e-3, rel=1e-15)


def test_gaussian_rejects_bad_sigma():
    with pytest.raises(ValueError):
        gaussian_profile(0.0, 2)
    with pytest.raises(ValueError):
        gaussian_spectrum(-1.0, 2)
    with pytest.raises(ValueError):
        dipole_initial_condition(0.0)


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("sigma", [0.1, 1.0])
def test_transform_pair(dim, sigma):
    xi = np.linspace(0.0, 5.0 / sigma, 41)
    assert_allclose(
        radial_spectrum(gaussian_profile(sigma, dim), dim, xi), gaussian_spectrum(sigma, dim)(xi), atol=1e-8 * sigma**dim
    )
    for x in (0.0, 1 / sigma, 3 / sigma):
        assert radial_spectrum(gaussian_profile(sigma, dim), dim, x) == pytest.approx(
            gaussian_spectrum(sigma, dim)(x), abs=1e-8
        )


def test_radial_spectrum_examples():
    assert radial_spectrum(gaussian_profile(1.0, 2), 2, 0.0) == pytest.approx(1.0, abs=1e-10)
    assert radial_spectrum(gaussian_profile(1.0, 3), 3, 1.0) == pytest.approx(math.exp(-0.5), abs=1e-8)
    zero = RadialProfile(lambda r: np.zeros_like(r), 1.0)
    assert_allclose(radial_spectrum(zero, 2, np.linspace(0, 4, 5)), 0.0)


def test_radial_spectrum_non_gaussian_3d():
    # h(r) = exp(-r) has the 3D transform (1/pi^2) / (1 + xi^2)^2
    h = RadialProfile(lambda r: np.exp(-r), 4.0)  # truncated at r = 48, tail below 1e-20
    xi = np.array([0.0, 0.5, 2.0])
    assert_allclose(radial_spectrum(h, 3, xi), 1 / (np.pi**2 * (1 + xi**2) ** 2), rtol=1e-9)


def test_radial_spectrum_rejects_negative():
    with pytest.raises(ValueError):
        radial_spectrum(gaussian_profile(1.0, 2), 2, -1.0)


def test_radial_field_has_only_monopole():
    f = lambda r: np.exp(-r)
    ms = multipole_decompose(lambda r, th, ph: f(r) * np.ones_like(th), ell_max=4)
    r = np.linspace(0, 3, 7)
    assert_allclose(ms.radial(0, 0, 0, r), np.sqrt(4 * np.pi) * f(r), rtol=1e-13)
    for ell, m in ms.channels():
        if (ell, m) != (0, 0):
            assert np.max(np.abs(ms.radial(ell, m, 0, r))) < 1e-12


def test_dipole_decomposition():
    sigma = 0.7
    ms = multipole_decompose(dipole_field(sigma), ell_max=6)
    r = np.linspace(0, 4, 17)
    expected = DIPOLE_AMPLITUDE * np.exp(-(r**2) / (2 * sigma**2)) * r
    assert_allclose(ms.radial(1, 0, 0, r), expected, atol=1e-12)
    for key in ms.channels():
        if key != (1, 0):
            assert np.max(np.abs(ms.radial(*key, 0, r))) < 1e-10


def test_y21_channel():
    g = lambda r: r**2 * np.exp(-r)
    field = lambda r, th, ph: 2 * (spherical_harmonic((2, 1), th, ph) * g(r)).real
    # a real field built from Y21 carries (2,1) and its partner (2,-1)
    ms = multipole_decompose(field, ell_max=5)
    r = np.linspace(0, 5, 11)
    assert_allclose(ms.radial(2, 1, 0, r), g(r), atol=1e-12)
    assert_allclose(ms.radial(2, -1, 0, r), -g(r), atol=1e-12)
    for key in ms.channels():
        if key not in ((2, 1), (2, -1)):
            assert np.max(np.abs(ms.radial(*key, 0, r))) < 1e-10


def test_round_trip_band_limited():
    rng = np.random.default_rng(7)
    ell_max = 6
    keys = [(ell, m) for ell in range(ell_max + 1) for m in range(-ell, ell + 1)]
    c = {k: rng.normal() + 1j * rng.normal() for k in keys}
    # enforce reality of the synthesised field
    for ell, m in keys:
        if m < 0:
            c[(ell, m)] = (-1) ** m * np.conj(c[(ell, -m)])
        elif m == 0:
            c[(ell, m)] = c[(ell, m)].real

    def field(r, th, ph):
        total = sum(c[k] * spherical_harmonic(k, th, ph) for k in keys)
        return (np.exp(-(r**2)) * total).real

    ms = multipole_decompose(field, ell_max)
    r = np.linspace(0, 2, 5)[:, None]
    th, ph = np.meshgrid(np.linspace(0.1, 3.0, 9), np.linspace(0, 6.0, 11), indexing="ij")
    rec = ms.reconstruct(r[..., None], th, ph)
    ref = field(r[..., None], th, ph)
    assert_allclose(rec, ref, atol=1e-8)


def test_reality_constraint():
    field = lambda r, th, ph: np.exp(-r) * (np.sin(th) * np.cos(ph) + np.sin(th) ** 2 * np.sin(2 * ph) + np.cos(th))
    ms = multipole_decompose(field, ell_max=4)
    r = np.linspace(0, 3, 6)
    for ell in range(5):
        for m in range(1, ell + 1):
            assert_allclose(ms.radial(ell, -m, 0, r), (-1) ** m * np.conj(ms.radial(ell, m, 0, r)), atol=1e-10)


def test_velocity_channel():
    ms = multipole_decompose(dipole_field(1.0), ell_max=2, field1=lambda r, th, ph: np.exp(-r) * np.ones_like(th))
    r = np.array([0.5, 1.0])
    assert_allclose(ms.radial(0, 0, 1, r), np.sqrt(4 * np.pi) * np.exp(-r), rtol=1e-13)
    assert_allclose(ms.radial(0, 0, 0, r), 0.0, atol=1e-13)


def test_decompose_limits():
    with pytest.raises(DomainError):
        multipole_decompose(dipole_field(1.0), ell_max=65)
    with pytest.raises(DomainError):
        multipole_decompose(dipole_field(1.0), ell_max=-1)
    with pytest.raises(DomainError):
        MultipoleSet(1, {(2, 0): (None, None)})


def test_dipole_initial_condition():
    sigma = 0.4
    ms = dipole_initial_condition(sigma)
    assert ms.channels() == [(1, 0)]
    assert ms.radial(1, 0, 0, 0.0) == 0.0
    r = np.linspace(0, 3 * sigma, 3001)
    assert r[np.argmax(ms.radial(1, 0, 0, r).real)] == pytest.approx(sigma, abs=1e-3)
    assert_allclose(ms.radial(1, 0, 1, r), 0.0)
    rr, th = np.meshgrid(np.linspace(0, 2, 9), np.linspace(0, np.pi, 7))
    assert_allclose(ms.reconstruct(rr, th, 0.3), dipole_field(sigma)(rr, th), atol=1e-10)


def test_restrict():
    ms = multipole_decompose(dipole_field(1.0), ell_max=2)
    sub = ms.restrict([(1, 0)])
    assert sub.channels() == [(1, 0)]
    assert sub.ell_max == ms.ell_max
