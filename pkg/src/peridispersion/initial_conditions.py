"""
Initial data: Gaussian radial profiles, radial Fourier transforms and
spherical-harmonic multipole decompositions.

Fourier transforms use the non-unitary convention

    v_hat(xi) = (2 pi)^(-N) int v(x) exp(i x.xi) dx,
    v(x)      = int v_hat(xi) exp(-i xi.x) dxi,

so a radial profile ``h(r)`` has the radial spectrum

    N = 1:  (1 / pi)      int_0^inf h(r) cos(xi r) dr
    N = 2:  (1 / (2 pi))  int_0^inf r h(r) J0(xi r) dr
    N = 3:  (1 / (2 pi^2)) int_0^inf r^2 h(r) j0(xi r) dr
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .dispersion import check_dim
from .quadrature import gauss_legendre, panel_nodes
from .special import (
    ELL_MAX_SUPPORTED,
    DomainError,
    bessel_j0,
    spherical_bessel_j,
    spherical_harmonic,
)

__all__ = [
    "RadialProfile",
    "RadialSpectrum",
    "MultipoleSet",
    "gaussian_profile",
    "gaussian_spectrum",
    "radial_spectrum",
    "multipole_decompose",
    "dipole_initial_condition",
    "dipole_field",
    "TRUNCATION_WIDTHS",
]

# radial integrals are cut at this many decay scales
TRUNCATION_WIDTHS = 12.0


@dataclass(frozen=True)
class RadialProfile:
    """A radial function ``r -> h(r)`` with a characteristic width."""

    eval: Callable[[np.ndarray], np.ndarray]
    decay_scale: float

    def __call__(self, r):
        return self.eval(np.asarray(r, dtype=float))


@dataclass(frozen=True)
class RadialSpectrum:
    """A radial function of the Fourier modulus, ``xi -> v_hat(xi)``.

    ``decay_scale`` is the width in ``xi`` beyond which the spectrum is
    negligible in units of that width.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    decay_scale: float

    def __call__(self, xi):
        return self.eval(np.asarray(xi, dtype=float))


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def zero_spectrum(decay_scale=1.0):
    return RadialSpectrum(_zero, decay_scale)


def gaussian_profile(sigma, dim):
    """Gaussian bump ``(2 pi)^(N/2) exp(-r^2 / (2 sigma^2))``."""
    dim = check_dim(dim)
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    amp = (2.0 * np.pi) ** (dim / 2.0)
    return RadialProfile(lambda r: amp * np.exp(-(r**2) / (2.0 * sigma**2)), float(sigma))


def gaussian_spectrum(sigma, dim):
    """Closed-form spectrum ``sigma^N exp(-xi^2 sigma^2 / 2)`` of :func:`gaussian_profile`."""
    dim = check_dim(dim)
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    amp = sigma**dim
    return RadialSpectrum(lambda xi: amp * np.exp(-(xi**2) * sigma**2 / 2.0), 1.0 / sigma)


def _radial_nodes(decay_scale, xi_max, order=16):
    rmax = TRUNCATION_WIDTHS * decay_scale
    width = min(decay_scale / 4.0, np.pi / (2.0 * max(xi_max, 1e-300)))
    n = max(1, int(np.ceil(rmax / width)))
    return panel_nodes(np.linspace(0.0, rmax, n + 1), order)


def radial_spectrum(profile, dim, xi):
    """
    Radial Fourier transform of a radial profile.

    Parameters
    ----------
    profile : RadialProfile
    dim : {1, 2, 3}
    xi : float or ndarray
        Nonnegative wavenumbers.

    Returns
    -------
    float or ndarray
    """
    dim = check_dim(dim)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError("xi must be nonnegative")
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)
    r, w = _radial_nodes(profile.decay_scale, float(xi.max()))
    h = np.asarray(profile(r), dtype=float)
    arg = np.outer(xi, r)
    if dim == 1:
        kern = np.cos(arg) / np.pi
    elif dim == 2:
        kern = r * bessel_j0(arg) / (2.0 * np.pi)
    else:
        kern = r**2 * spherical_bessel_j(0, arg) / (2.0 * np.pi**2)
    out = kern @ (w * h)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# multipoles


@dataclass
class MultipoleSet:
    """
    Spherical-harmonic channels of a pair of 3D initial fields.

    ``coeffs`` maps ``(ell, m)`` to a pair ``(v0, v1)`` of radial callables
    returning complex values; ``None`` stands for an identically zero channel.
    """

    ell_max: int
    coeffs: dict = field(default_factory=dict)
    decay_scale: float = 1.0

    def __post_init__(self):
        if self.ell_max < 0 or self.ell_max > ELL_MAX_SUPPORTED:
            raise DomainError(f"ell_max must lie in [0, {ELL_MAX_SUPPORTED}], got {self.ell_max}")
        for ell, m in self.coeffs:
            if ell > self.ell_max or abs(m) > ell:
                raise DomainError(f"channel ({ell}, {m}) outside ell_max={self.ell_max}")

    def channels(self):
        return sorted(self.coeffs)

    def radial(self, ell, m, which=0, r=None):
        """Evaluate ``v^which_{ell m}(r)`` (zero for absent channels)."""
        r = np.asarray(r, dtype=float)
        fn = self.coeffs.get((ell, m), (None, None))[which]
        if fn is None:
            return np.zeros(r.shape, dtype=complex)
        return np.asarray(fn(r), dtype=complex) * np.ones(r.shape)

    def restrict(self, keep):
        """A copy holding only the channels in ``keep``."""
        keep = set(keep)
        return MultipoleSet(self.ell_max, {k: v for k, v in self.coeffs.items() if k in keep}, self.decay_scale)

    def reconstruct(self, r, theta, phi, which=0):
        """Sum the channels back into a real field at ``(r, theta, phi)``."""
        r, theta, phi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, theta, phi)))
        total = np.zeros(r.shape, dtype=complex)
        for ell, m in self.channels():
            total += self.radial(ell, m, which, r) * spherical_harmonic((ell, m), theta, phi)
        return total.real


def sphere_quadrature(ell_max, n_theta=None, n_phi=None):
    """
    Gauss-Legendre in ``cos(theta)`` times a uniform ``phi`` grid.

    The defaults ``ell_max + 1`` and ``2 ell_max + 2`` integrate products of
    two harmonics of degree ``<= ell_max`` exactly.
    """
    n_theta = n_theta or ell_max + 1
    n_phi = n_phi or 2 * ell_max + 2
    x, w = gauss_legendre(n_theta)
    mu = 2.0 * x - 1.0
    theta = np.arccos(mu)
    wt = 2.0 * w
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(wt, np.full(n_phi, 2.0 * np.pi / n_phi))
    return TH, PH, W


def multipole_decompose(field0, ell_max, field1=None, decay_scale=1.0, n_theta=None, n_phi=None):
    """
    Project a field ``(r, theta, phi) -> value`` onto spherical harmonics.

    Parameters
    ----------
    field0 : callable
        Vectorised ``field(r, theta, phi)`` for the initial displacement.
    ell_max : int
        Truncation degree.
    field1 : callable, optional
        Initial velocity field; zero when omitted.
    decay_scale : float
        Radial width recorded on the result for downstream truncation.
    n_theta, n_phi : int, optional
        Override the exact-for-band-limit angular rule sizes.

    Returns
    -------
    MultipoleSet
        Channel functions compute ``int field(r, n) Y*_{ell m}(n) dn`` at the
        radii they are called with.
    """
    if int(ell_max) != ell_max or ell_max < 0:
        raise DomainError("ell_max must be a nonnegative integer")
    if ell_max > ELL_MAX_SUPPORTED:
        raise DomainError(f"ell_max={ell_max} exceeds supported maximum {ELL_MAX_SUPPORTED}")
    TH, PH, W = sphere_quadrature(ell_max, n_theta, n_phi)
    conj_y = {
        (ell, m): np.conj(spherical_harmonic((ell, m), TH, PH)) * W
        for ell in range(ell_max + 1)
        for m in range(-ell, ell + 1)
    }

    def projector(fn):
        cache = {}

        def samples(r):
            key = (r.shape, r.tobytes())
            if key not in cache:
                cache.clear()
                cache[key] = np.asarray(fn(r[..., None, None], TH, PH), dtype=float)
            return cache[key]

        def channel(key):
            def coeff(r):
                r = np.asarray(r, dtype=float)
                return np.sum(samples(r) * conj_y[key], axis=(-2, -1))

            return coeff

        return channel

    p0 = projector(field0)
    p1 = projector(field1) if field1 is not None else None
    coeffs = {key: (p0(key), p1(key) if p1 else None) for key in conj_y}
    return MultipoleSet(int(ell_max), coeffs, float(decay_scale))


DIPOLE_AMPLITUDE = 4.0 * np.pi**2 * np.sqrt(2.0 / 3.0)


def dipole_field(sigma):
    """Dipolar displacement ``(2 pi)^(3/2) exp(-r^2/(2 sigma^2)) r cos(theta)``."""

    def fn(r, theta, phi=None):
        r = np.asarray(r, dtype=float)
        return (2.0 * np.pi) ** 1.5 * np.exp(-(r**2) / (2.0 * sigma**2)) * r * np.cos(theta)

    return fn


def dipole_initial_condition(sigma):
    """
    Multipoles of :func:`dipole_field`: the single channel ``(1, 0)`` with
    ``v0_10(r) = 4 pi^2 sqrt(2/3) exp(-r^2/(2 sigma^2)) r`` and zero velocity.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")

    def v0(r):
        r = np.asarray(r, dtype=float)
        return DIPOLE_AMPLITUDE * np.exp(-(r**2) / (2.0 * sigma**2)) * r

    return MultipoleSet(ell_max=1, coeffs={(1, 0): (v0, None)}, decay_scale=float(sigma))
