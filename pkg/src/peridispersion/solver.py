"""
Closed-form spectral solutions of the linear peridynamic Cauchy problem.

Every Fourier mode evolves as a harmonic oscillator with frequency
``omega(xi)``; the time-domain field is recovered by the radial inverse
transform of the dimension at hand or, for anisotropic 3D data, by the
spherical-harmonic factorised synthesis

    u(t, r, n) = (2/pi) sum_LM Y_LM(n) int_0^inf xi^2 j_L(xi r)
                 [cos(omega t) v0~_LM(xi) + sin(omega t)/omega v1~_LM(xi)] dxi,

    v~_LM(xi) = int_0^inf v_LM(s) s^2 j_L(xi s) ds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _csv
from .dispersion import MaterialParams, check_dim, omega
from .initial_conditions import (
    TRUNCATION_WIDTHS,
    MultipoleSet,
    RadialSpectrum,
    zero_spectrum,
)
from .quadrature import panel_nodes
from .special import ELL_MAX_SUPPORTED, DomainError, bessel_j0, spherical_bessel_j, spherical_harmonic

__all__ = [
    "evolve_mode",
    "RadialSynthesizer",
    "AnisotropicSynthesizer",
    "radial_solution",
    "anisotropic_solution_3d",
    "EvolutionRequest",
    "FieldSnapshot",
    "field_snapshot",
    "write_snapshots",
    "DEFAULT_ELL_MAX",
]

DEFAULT_ELL_MAX = 8
# spectra are cut where the Gaussian class drops below exp(-50)
SPECTRAL_WIDTHS = 10.0
_ORDER = 16
_CHUNK = 256


def evolve_mode(v0_hat, v1_hat, omega_value, t):
    """
    Fourier amplitude ``v0 cos(omega t) + v1 sin(omega t) / omega``.

    ``sin(omega t) / omega`` is taken as ``t`` when ``omega = 0``. Broadcasts
    over all arguments.
    """
    w = np.asarray(omega_value, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be nonnegative")
    t = np.asarray(t, dtype=float)
    sinc_term = t * np.sinc(w * t / np.pi)
    return v0_hat * np.cos(w * t) + v1_hat * sinc_term


def _xi_nodes(xi_max, r_max, params, spectral_scale):
    width = np.pi / (2.0 * max(r_max, params.delta))
    width = min(width, spectral_scale / 4.0)
    n = max(1, int(np.ceil(xi_max / width)))
    return panel_nodes(np.linspace(0.0, xi_max, n + 1), _ORDER)


class RadialSynthesizer:
    """
    Radial solution ``u(t, r)`` for isotropic data in dimension 1, 2 or 3.

    The wavenumber quadrature, ``omega`` on its nodes and the spectra are
    computed once; :meth:`evaluate` is then a matrix product per time.

    Parameters
    ----------
    dim : {1, 2, 3}
    params : MaterialParams
    v0_hat, v1_hat : RadialSpectrum
        Radial spectra of the initial displacement and velocity. ``v1_hat``
        may be ``None`` for zero initial velocity.
    r_max : float
        Largest radius that will be requested; sets the panel width.
    xi_max : float, optional
        Spectral cut-off, by default ``10 * decay_scale`` of the spectra.
    """

    def __init__(self, dim, params, v0_hat, v1_hat=None, r_max=1.0, xi_max=None):
        self.dim = check_dim(dim)
        self.params = params
        v1_hat = v1_hat if v1_hat is not None else zero_spectrum(v0_hat.decay_scale)
        scale = max(v0_hat.decay_scale, v1_hat.decay_scale)
        self.xi_max = SPECTRAL_WIDTHS * scale if xi_max is None else float(xi_max)
        self.r_max = float(r_max)
        self.xi, w = _xi_nodes(self.xi_max, self.r_max, params, scale)
        self.omega = omega(self.dim, params, self.xi)
        if self.dim == 1:
            jac = 2.0 * np.ones_like(self.xi)
        elif self.dim == 2:
            jac = 2.0 * np.pi * self.xi
        else:
            jac = 4.0 * np.pi * self.xi**2
        self.weights = w * jac
        self.v0 = np.asarray(v0_hat(self.xi), dtype=float)
        self.v1 = np.asarray(v1_hat(self.xi), dtype=float)

    def _radial_kernel(self, r):
        arg = np.outer(r, self.xi)
        if self.dim == 1:
            return np.cos(arg)
        if self.dim == 2:
            return bessel_j0(arg)
        return spherical_bessel_j(0, arg)

    def amplitude(self, t):
        """Mode amplitudes at time ``t`` on the wavenumber nodes."""
        return evolve_mode(self.v0, self.v1, self.omega, t)

    def evaluate(self, t, r):
        """
        ``u(t, r)`` for a scalar time and an array of radii.

        Radii beyond ``r_max`` are under-resolved; a synthesizer built with a
        larger ``r_max`` should be used for them.
        """
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise ValueError("radii must be nonnegative")
        flat = r.ravel()
        a = self.weights * self.amplitude(t)
        out = np.empty_like(flat)
        for start in range(0, flat.size, _CHUNK):
            chunk = flat[start : start + _CHUNK]
            out[start : start + _CHUNK] = self._radial_kernel(chunk) @ a
        return out.reshape(r.shape)


def radial_solution(dim, params, v0_hat, v1_hat, t, r):
    """
    Isotropic solution ``u(t, r)`` of the Cauchy problem.

    Parameters
    ----------
    dim : {1, 2, 3}
    params : MaterialParams
    v0_hat, v1_hat : RadialSpectrum or None
    t : float
    r : float or ndarray
        Nonnegative radii.
    """
    r_arr = np.asarray(r, dtype=float)
    r_max = float(r_arr.max()) if r_arr.size else 1.0
    synth = RadialSynthesizer(dim, params, v0_hat, v1_hat, r_max=r_max)
    out = synth.evaluate(t, r_arr)
    return float(out) if out.ndim == 0 else out


class AnisotropicSynthesizer:
    """
    Factorised 3D solution for multipole initial data.

    The inner transforms ``v~_LM(xi)`` are computed once per channel on the
    wavenumber nodes at construction and are read-only afterwards.
    """

    def __init__(self, params, multipoles, r_max=1.0, ell_max=DEFAULT_ELL_MAX, xi_max=None):
        if ell_max > ELL_MAX_SUPPORTED:
            raise DomainError(f"ell_max={ell_max} exceeds supported maximum {ELL_MAX_SUPPORTED}")
        channels = multipoles.channels()
        if any(ell > ell_max for ell, _ in channels):
            raise DomainError(f"multipole channels exceed ell_max={ell_max}")
        self.params = params
        self.multipoles = multipoles
        sigma = multipoles.decay_scale
        L = max((ell for ell, _ in channels), default=0)
        self.xi_max = (SPECTRAL_WIDTHS + L) / sigma if xi_max is None else float(xi_max)
        self.r_max = float(r_max)
        self.xi, w = _xi_nodes(self.xi_max, self.r_max, params, 1.0 / sigma)
        self.omega = omega(3, params, self.xi)
        self.weights = (2.0 / np.pi) * w * self.xi**2

        # radial nodes for the inner transform
        s_max = TRUNCATION_WIDTHS * sigma
        width = min(sigma / 4.0, np.pi / (2.0 * self.xi_max))
        n = max(1, int(np.ceil(s_max / width)))
        s, ws = panel_nodes(np.linspace(0.0, s_max, n + 1), _ORDER)
        self.transforms = {}
        for ell, m in channels:
            jl = spherical_bessel_j(ell, np.outer(self.xi, s))
            pair = []
            for which in (0, 1):
                if multipoles.coeffs[(ell, m)][which] is None:
                    pair.append(None)
                else:
                    v = multipoles.radial(ell, m, which, s)
                    pair.append(jl @ (ws * s**2 * v))
            self.transforms[(ell, m)] = tuple(pair)

    def channel_radial(self, ell, m, t, r):
        """Radial factor of channel ``(ell, m)`` at time ``t`` (complex)."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        v0, v1 = self.transforms[(ell, m)]
        zero = np.zeros_like(self.xi, dtype=complex)
        a = evolve_mode(v0 if v0 is not None else zero, v1 if v1 is not None else zero, self.omega, t)
        out = np.empty(r.shape, dtype=complex)
        for start in range(0, r.size, _CHUNK):
            chunk = r[start : start + _CHUNK]
            out[start : start + _CHUNK] = spherical_bessel_j(ell, np.outer(chunk, self.xi)) @ (self.weights * a)
        return out

    def evaluate(self, t, r, theta, phi):
        """Real field ``u(t, r, theta, phi)``; position arrays broadcast."""
        r, theta, phi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, theta, phi)))
        if np.any(r < 0):
            raise ValueError("radii must be nonnegative")
        total = np.zeros(r.shape, dtype=complex)
        for ell, m in self.transforms:
            radial = self.channel_radial(ell, m, t, r.ravel()).reshape(r.shape)
            total += radial * spherical_harmonic((ell, m), theta, phi)
        return total.real


def anisotropic_solution_3d(params, multipoles, t, r, theta, phi, ell_max=DEFAULT_ELL_MAX):
    """Evaluate the factorised anisotropic 3D solution at the given points."""
    r_arr = np.asarray(r, dtype=float)
    r_max = float(r_arr.max()) if r_arr.size else 1.0
    synth = AnisotropicSynthesizer(params, multipoles, r_max=r_max, ell_max=ell_max)
    out = synth.evaluate(t, r_arr, theta, phi)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# snapshots


@dataclass
class EvolutionRequest:
    """
    What to evolve and where to sample it.

    Give either ``spectra`` (isotropic) or ``multipoles`` (3D anisotropic).
    ``angles`` lists ``(theta, phi)`` directions sampled at every radius in
    anisotropic runs.
    """

    dim: int
    params: MaterialParams
    times: Sequence[float]
    radii: Sequence[float]
    spectra: Optional[tuple] = None
    multipoles: Optional[MultipoleSet] = None
    angles: Sequence[tuple] = field(default_factory=lambda: [(0.0, 0.0)])
    ell_max: int = DEFAULT_ELL_MAX

    def __post_init__(self):
        check_dim(self.dim)
        self.times = [float(t) for t in self.times]
        self.radii = np.asarray(self.radii, dtype=float).ravel()
        if any(t < 0 for t in self.times):
            raise ValueError("times must be nonnegative")
        if np.any(self.radii < 0) or np.any(np.diff(self.radii) < 0):
            raise ValueError("radii must be nonnegative and sorted")
        if (self.spectra is None) == (self.multipoles is None):
            raise ValueError("give exactly one of spectra or multipoles")
        if self.multipoles is not None and self.dim != 3:
            raise ValueError("anisotropic evolution requires dim=3")

    @property
    def anisotropic(self):
        return self.multipoles is not None


@dataclass
class FieldSnapshot:
    """Solution samples at one time; ``positions`` rows are ``(r,)`` or ``(r, theta, phi)``."""

    time: float
    dim: int
    positions: np.ndarray
    values: np.ndarray

    @property
    def anisotropic(self):
        return self.positions.ndim == 2 and self.positions.shape[1] == 3

    def rows(self):
        if len(self.values) == 0:
            return []
        pos = self.positions.reshape(len(self.values), -1)
        return [(self.time, *p, u) for p, u in zip(pos, self.values)]


RADIAL_HEADER = ("t", "r", "u")
ANISOTROPIC_HEADER = ("t", "r", "theta", "phi", "u")


def field_snapshot(request):
    """Sample the solution described by ``request`` at every requested time."""
    radii = request.radii
    r_max = float(radii.max()) if radii.size else 1.0
    if radii.size == 0:
        shape = (0, 3) if request.anisotropic else (0,)
        return [FieldSnapshot(t, request.dim, np.empty(shape), np.empty(0)) for t in request.times]
    if request.anisotropic:
        synth = AnisotropicSynthesizer(request.params, request.multipoles, r_max=r_max, ell_max=request.ell_max)
        ang = np.asarray(request.angles, dtype=float).reshape(-1, 2)
        R = np.repeat(radii, len(ang))
        TH = np.tile(ang[:, 0], len(radii))
        PH = np.tile(ang[:, 1], len(radii))
        positions = np.column_stack([R, TH, PH])
        return [
            FieldSnapshot(t, 3, positions, synth.evaluate(t, R, TH, PH)) for t in request.times
        ]
    v0_hat, v1_hat = request.spectra
    synth = RadialSynthesizer(request.dim, request.params, v0_hat, v1_hat, r_max=r_max)
    return [FieldSnapshot(t, request.dim, radii.copy(), synth.evaluate(t, radii)) for t in request.times]


def write_snapshots(snapshots, target, anisotropic=False):
    """Write snapshots as one CSV with header ``t,r,u`` or ``t,r,theta,phi,u``."""
    header = ANISOTROPIC_HEADER if anisotropic else RADIAL_HEADER
    rows = [row for snap in snapshots for row in snap.rows()]
    _csv.write_rows(target, header, rows)
