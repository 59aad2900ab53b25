"""
Dispersion relations of linear bond-based peridynamics in 1, 2 and 3 dimensions.

For a material with kernel strength ``kappa``, density ``rho``, horizon
``delta`` and singularity exponent ``alpha`` the squared frequency of the
plane wave with wavenumber modulus ``xi`` is

    omega^2(xi) = C_N kappa / (rho delta^(2 alpha))
                  * int_0^1 (1 - K_N(xi delta z)) z^(-1 - 2 alpha) dz

with ``(C_N, K_N) = (4, cos), (4 pi, J0), (8 pi, j0)`` for ``N = 1, 2, 3``.
Small ``xi delta`` is summed term by term from the power series of the
kernel; larger values use the substituted form

    omega^2(xi) = C_N (kappa / rho) xi^(2 alpha) int_0^(xi delta) (1 - K_N(tau)) tau^(-1 - 2 alpha) dtau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _csv
from .quadrature import integrate_oscillatory_tail, kernel_integral
from .special import KERNEL_FOR_DIM, gamma, series_coefficients

__all__ = [
    "MaterialParams",
    "DispersionTable",
    "check_dim",
    "omega_squared",
    "omega",
    "low_freq_coefficient",
    "high_freq_coefficient",
    "high_freq_closed_form",
    "high_freq_quadrature",
    "group_velocity",
    "large_scale_group_velocity",
    "dispersion_table",
]

PREFACTOR = {1: 4.0, 2: 4.0 * np.pi, 3: 8.0 * np.pi}
LOW_FREQ_FACTOR = {1: 1.0, 2: np.pi / 2.0, 3: 2.0 * np.pi / 3.0}

SERIES_THRESHOLD = 1.0
_SERIES_MAX = 4.0
_ALPHA_HALF_WINDOW = 1e-3


@dataclass(frozen=True)
class MaterialParams:
    """Constitutive constants of the linear peridynamic material."""

    kappa: float = 1.0
    rho: float = 1.0
    delta: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        for name in ("kappa", "rho", "delta"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value}")
        if not (np.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in the open interval (0, 1), got {self.alpha}")


def check_dim(dim):
    """Validate a spatial dimension and return it as ``int``."""
    if dim not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {dim!r}")
    return int(dim)


def _series(dim, params, X):
    """Termwise-integrated power series in X = xi*delta."""
    c = series_coefficients(KERNEL_FOR_DIM[dim])
    a = params.alpha
    X2 = X**2
    total = np.zeros_like(X)
    power = np.ones_like(X)
    for m, cm in enumerate(c, start=1):
        power = power * X2
        term = cm * power / (2 * m - 2 * a)
        total = total + term
        if np.all(np.abs(term) <= 1e-16 * np.abs(total)):
            break
    pref = PREFACTOR[dim] * params.kappa / (params.rho * params.delta ** (2 * a))
    return pref * total


def _quadrature(dim, params, xi):
    X = xi * params.delta
    a = params.alpha
    I = kernel_integral(KERNEL_FOR_DIM[dim], a, X)
    return PREFACTOR[dim] * params.kappa / params.rho * xi ** (2 * a) * I


def omega_squared(dim, params, xi, method="auto"):
    """
    Squared dispersion relation ``omega^2(xi)``.

    Parameters
    ----------
    dim : {1, 2, 3}
    params : MaterialParams
    xi : float or ndarray
        Nonnegative wavenumber modulus.
    method : {'auto', 'series', 'quadrature'}
        ``'auto'`` sums the series for ``xi*delta <= 1`` and integrates
        otherwise. ``'series'`` is only accepted for ``xi*delta <= 4``.

    Returns
    -------
    float or ndarray
        Nonnegative ``omega^2``.
    """
    dim = check_dim(dim)
    xi_arr = np.asarray(xi, dtype=float)
    if not np.all(np.isfinite(xi_arr)):
        raise ValueError("xi must be finite")
    if np.any(xi_arr < 0):
        raise ValueError("xi must be nonnegative")
    scalar = xi_arr.ndim == 0
    xi_arr = np.atleast_1d(xi_arr)
    X = xi_arr * params.delta
    out = np.zeros_like(xi_arr)

    if method == "series":
        if np.any(X > _SERIES_MAX):
            raise ValueError(f"series evaluation requires xi*delta <= {_SERIES_MAX}")
        use_series = np.ones_like(X, dtype=bool)
    elif method == "quadrature":
        use_series = np.zeros_like(X, dtype=bool)
    elif method == "auto":
        use_series = X <= SERIES_THRESHOLD
    else:
        raise ValueError(f"unknown method {method!r}")

    nonzero = X > 0
    s = use_series & nonzero
    q = ~use_series & nonzero
    if np.any(s):
        out[s] = _series(dim, params, X[s])
    if np.any(q):
        out[q] = _quadrature(dim, params, xi_arr[q])
    out = np.maximum(out, 0.0)
    return float(out[0]) if scalar else out


def omega(dim, params, xi, method="auto"):
    """Dispersion relation ``omega(xi) = sqrt(omega^2(xi))``."""
    return np.sqrt(omega_squared(dim, params, xi, method=method))


def low_freq_coefficient(dim, params):
    """Limit of ``omega^2(xi) / xi^2`` as ``xi -> 0``."""
    dim = check_dim(dim)
    p = params
    return LOW_FREQ_FACTOR[dim] * p.kappa * p.delta ** (2 * (1 - p.alpha)) / ((1 - p.alpha) * p.rho)


def high_freq_closed_form(dim, params):
    """
    Gamma-function form of ``lim omega^2(xi) / xi^(2 alpha)`` as ``xi -> inf``.

    Undefined at ``alpha = 1/2`` for ``N = 1, 3``, where the Gamma factor has
    a pole; use :func:`high_freq_coefficient` there.
    """
    dim = check_dim(dim)
    a = params.alpha
    k_over_rho = params.kappa / params.rho
    if dim == 1:
        return -4.0 * k_over_rho * np.cos(np.pi * a) * gamma(-2 * a)
    if dim == 2:
        return -(2.0 ** (1 - 2 * a)) * np.pi * k_over_rho * gamma(-a) / gamma(1 + a)
    return 8.0 * np.pi * k_over_rho * np.cos(np.pi * a) * gamma(-1 - 2 * a)


def high_freq_quadrature(dim, params):
    """High-frequency coefficient from the oscillatory-tail integral."""
    dim = check_dim(dim)
    tail = integrate_oscillatory_tail(KERNEL_FOR_DIM[dim], params.alpha)
    return PREFACTOR[dim] * params.kappa / params.rho * tail


def high_freq_coefficient(dim, params):
    """
    Limit of ``omega^2(xi) / xi^(2 alpha)`` as ``xi -> inf``.

    Uses the Gamma closed forms, switching to quadrature within ``1e-3`` of
    ``alpha = 1/2`` where those forms are ``0 * inf``.
    """
    if abs(params.alpha - 0.5) < _ALPHA_HALF_WINDOW:
        return high_freq_quadrature(dim, params)
    return float(high_freq_closed_form(dim, params))


def _omega_even(dim, params, x):
    return omega(dim, params, np.abs(x))


def group_velocity(dim, params, xi):
    """
    Group velocity ``d omega / d xi``.

    Central differences with step ``h = max(1e-6, 1e-4 xi)`` (never more than
    ``xi/2``) and one Richardson extrapolation. At ``xi = 0`` the large-scale
    limit ``sqrt(low_freq_coefficient)`` is returned.
    """
    dim = check_dim(dim)
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr < 0) or not np.all(np.isfinite(xi_arr)):
        raise ValueError("xi must be finite and nonnegative")
    scalar = xi_arr.ndim == 0
    xi_arr = np.atleast_1d(xi_arr)
    out = np.full_like(xi_arr, np.sqrt(low_freq_coefficient(dim, params)))
    pos = xi_arr > 0
    if np.any(pos):
        x = xi_arr[pos]
        h = np.minimum(np.maximum(1e-6, 1e-4 * x), 0.5 * x)

        def central(step):
            return (_omega_even(dim, params, x + step) - _omega_even(dim, params, x - step)) / (2 * step)

        out[pos] = (4.0 * central(0.5 * h) - central(h)) / 3.0
    return float(out[0]) if scalar else out


def large_scale_group_velocity(dim, params):
    """Large-scale (``xi delta << 1``) propagation speed ``sqrt(low_freq_coefficient)``."""
    return float(np.sqrt(low_freq_coefficient(dim, params)))


@dataclass(frozen=True)
class DispersionTable:
    """Sampled dispersion relation for one dimension and parameter set."""

    params: MaterialParams
    dim: int
    xi: np.ndarray
    omega_sq: np.ndarray
    omega: np.ndarray
    group_velocity: np.ndarray

    HEADER = ("xi", "omega_sq", "omega", "vg")

    def rows(self):
        return list(zip(self.xi, self.omega_sq, self.omega, self.group_velocity))

    def to_csv(self, target):
        """Write the table as CSV with header ``xi,omega_sq,omega,vg``."""
        _csv.write_rows(target, self.HEADER, self.rows())


def dispersion_table(dim, params, xi_grid):
    """
    Tabulate ``omega^2``, ``omega`` and the group velocity on a grid.

    Parameters
    ----------
    xi_grid : array_like
        Strictly increasing, nonnegative wavenumbers.
    """
    dim = check_dim(dim)
    xi = np.asarray(xi_grid, dtype=float).ravel()
    if np.any(xi < 0) or not np.all(np.isfinite(xi)):
        raise ValueError("xi grid must be finite and nonnegative")
    if np.any(np.diff(xi) <= 0):
        raise ValueError("xi grid must be strictly increasing")
    w2 = np.atleast_1d(omega_squared(dim, params, xi))
    return DispersionTable(
        params=params,
        dim=dim,
        xi=xi,
        omega_sq=w2,
        omega=np.sqrt(w2),
        group_velocity=np.atleast_1d(group_velocity(dim, params, xi)),
    )
