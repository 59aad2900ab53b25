"""
Special functions used throughout the package.

Thin, validated wrappers around :mod:`scipy.special` for the Bessel,
spherical Bessel, Gamma and spherical-harmonic evaluations, together with
the three radial kernels ``cos``, ``J0`` and ``j0`` that appear in the
dispersion integrals in one, two and three dimensions.

Spherical harmonics follow the orthonormal convention with the
Condon-Shortley phase, ``theta`` is the polar angle and ``phi`` the azimuth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sp

__all__ = [
    "ELL_MAX_SUPPORTED",
    "DomainError",
    "SphericalHarmonicIndex",
    "bessel_j0",
    "spherical_bessel_j",
    "gamma",
    "spherical_harmonic",
    "kernel",
    "one_minus_kernel",
    "one_minus_kernel_over_x2",
    "series_coefficients",
    "KERNEL_FOR_DIM",
]

ELL_MAX_SUPPORTED = 64

# radial kernel of the dispersion integral for each dimension
KERNEL_FOR_DIM = {1: "cosine", 2: "bessel_j0", 3: "spherical_j0"}

# below this argument 1 - K(x) is summed from its Taylor series
_SERIES_CUTOFF = 0.5


class DomainError(ValueError):
    """Raised when a special function is evaluated outside its domain."""


@dataclass(frozen=True)
class SphericalHarmonicIndex:
    ell: int
    m: int

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError(f"degree ell must be a nonnegative integer, got {self.ell}")
        if int(self.m) != self.m or abs(self.m) > self.ell:
            raise DomainError(f"order m must satisfy |m| <= ell, got (ell={self.ell}, m={self.m})")


def _finite(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _scalar_or_array(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def bessel_j0(x):
    """Bessel function of the first kind of order zero, ``J0(x)``."""
    return _scalar_or_array(sp.j0(_finite(x)))


def spherical_bessel_j(ell, x):
    """
    Spherical Bessel function of the first kind ``j_ell(x)``.

    Parameters
    ----------
    ell : int
        Nonnegative order, at most ``ELL_MAX_SUPPORTED``.
    x : float or ndarray
        Real argument. ``j_0(0) = 1`` and ``j_ell(0) = 0`` for ``ell > 0``.
    """
    if int(ell) != ell or ell < 0:
        raise DomainError(f"order must be a nonnegative integer, got {ell}")
    if ell > ELL_MAX_SUPPORTED:
        raise DomainError(f"order {ell} exceeds supported maximum {ELL_MAX_SUPPORTED}")
    return _scalar_or_array(sp.spherical_jn(int(ell), _finite(x)))


def gamma(x):
    """
    Euler Gamma function for real arguments, negative non-integers included.

    Raises
    ------
    DomainError
        If any argument is a nonpositive integer (a pole).
    """
    arr = _finite(x)
    poles = (arr <= 0) & (arr == np.round(arr))
    if np.any(poles):
        raise DomainError(f"Gamma has a pole at x={np.atleast_1d(arr[poles])[0]:g}")
    return _scalar_or_array(sp.gamma(arr))


def spherical_harmonic(idx, theta, phi):
    """
    Orthonormal spherical harmonic ``Y_{ell m}(theta, phi)``.

    Parameters
    ----------
    idx : SphericalHarmonicIndex or tuple of (ell, m)
    theta : float or ndarray
        Polar angle in ``[0, pi]``.
    phi : float or ndarray
        Azimuthal angle.

    Returns
    -------
    complex or ndarray of complex
    """
    if not isinstance(idx, SphericalHarmonicIndex):
        idx = SphericalHarmonicIndex(*idx)
    if idx.ell > ELL_MAX_SUPPORTED:
        raise DomainError(f"degree {idx.ell} exceeds supported maximum {ELL_MAX_SUPPORTED}")
    theta = _finite(theta, "theta")
    phi = _finite(phi, "phi")
    if np.any(theta < -1e-12) or np.any(theta > np.pi + 1e-12):
        raise DomainError("theta must lie in [0, pi]")
    y = sp.sph_harm_y(idx.ell, idx.m, np.clip(theta, 0.0, np.pi), phi)
    return complex(y) if np.ndim(y) == 0 else y


def kernel(kind, x):
    """Evaluate the radial kernel ``cos``, ``J0`` or ``j0`` at ``x``."""
    x = np.asarray(x, dtype=float)
    if kind == "cosine":
        return np.cos(x)
    if kind == "bessel_j0":
        return sp.j0(x)
    if kind == "spherical_j0":
        return np.sinc(x / np.pi)
    raise ValueError(f"unknown kernel {kind!r}")


# Taylor coefficients c_m of 1 - K(x) = sum_{m>=1} (-1)^(m+1) c_m x^(2m)
def _series_coefficients(kind, terms=40):
    m = np.arange(1, terms + 1, dtype=float)
    if kind == "cosine":
        logc = -sp.gammaln(2 * m + 1)
    elif kind == "bessel_j0":
        logc = -2 * sp.gammaln(m + 1) - m * np.log(4.0)
    elif kind == "spherical_j0":
        logc = -sp.gammaln(2 * m + 2)
    else:
        raise ValueError(f"unknown kernel {kind!r}")
    return (-1.0) ** (m + 1) * np.exp(logc)


_COEFFS = {k: _series_coefficients(k) for k in KERNEL_FOR_DIM.values()}


def series_coefficients(kind):
    """Signed Taylor coefficients of ``1 - K(x)`` in powers of ``x**2``."""
    return _COEFFS[kind].copy()


def one_minus_kernel_over_x2(kind, x):
    """
    ``(1 - K(x)) / x**2`` without cancellation near ``x = 0``.

    This is an even analytic function equal to ``1/2``, ``1/4`` or ``1/6`` at
    the origin for the cosine, ``J0`` and ``j0`` kernels respectively.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = np.empty_like(ax)
    small = ax < _SERIES_CUTOFF
    if np.any(small):
        x2 = ax[small] ** 2
        # Horner in x^2; 12 terms is far below double precision at x < 0.5
        c = _COEFFS[kind][:12]
        acc = np.zeros_like(x2)
        for ck in c[::-1]:
            acc = acc * x2 + ck
        out[small] = acc
    big = ~small
    if np.any(big):
        xb = ax[big]
        if kind == "cosine":
            out[big] = 2.0 * np.sin(0.5 * xb) ** 2 / xb**2
        else:
            out[big] = (1.0 - kernel(kind, xb)) / xb**2
    return out


def one_minus_kernel(kind, x):
    """``1 - K(x)`` evaluated without cancellation for small ``x``."""
    x = np.asarray(x, dtype=float)
    return x**2 * one_minus_kernel_over_x2(kind, x)
