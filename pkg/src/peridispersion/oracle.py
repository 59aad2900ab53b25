"""
Direct-space checks of the spectral machinery.

The nonlocal operator

    (K u)(x) = -2 kappa int_{B_delta(0)} (u(x) - u(x + y)) / |y|^(N + 2 alpha) dy

is applied by cubature over the interaction ball: a Gauss-Jacobi rule in
the radius absorbs the ``r^(1 - 2 alpha)`` behaviour left after the
symmetric angular rule cancels the first-order part of the difference.
None of this goes through the dispersion integrals, so comparing against
``-rho omega^2`` is an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import MaterialParams, check_dim, omega_squared
from .quadrature import gauss_jacobi_power, gauss_legendre
from .solver import RadialSynthesizer

__all__ = [
    "PlaneWaveCheck",
    "ball_directions",
    "k_planewave_multiplier",
    "planewave_check",
    "k_apply_sampled",
    "evolution_residual",
    "VERIFY_HEADER",
    "verify_matrix",
]


def ball_directions(dim, n_angle=64, n_polar=40):
    """
    Unit directions and weights of a centrally symmetric rule on the sphere ``S^(N-1)``.

    1D uses ``{+1, -1}``; 2D a uniform circle rule; 3D Gauss-Legendre in
    ``cos(theta)`` times a uniform azimuth rule.
    """
    dim = check_dim(dim)
    if dim == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if dim == 2:
        th = 2.0 * np.pi * np.arange(n_angle) / n_angle
        return np.column_stack([np.cos(th), np.sin(th)]), np.full(n_angle, 2.0 * np.pi / n_angle)
    x, w = gauss_legendre(n_polar)
    mu = 2.0 * x - 1.0
    ph = 2.0 * np.pi * np.arange(n_angle) / n_angle
    MU, PH = np.meshgrid(mu, ph, indexing="ij")
    S = np.sqrt(1.0 - MU**2)
    dirs = np.column_stack([(S * np.cos(PH)).ravel(), (S * np.sin(PH)).ravel(), MU.ravel()])
    weights = np.outer(2.0 * w, np.full(n_angle, 2.0 * np.pi / n_angle)).ravel()
    return dirs, weights


def _radial_rule(params, n_radial):
    s, w = gauss_jacobi_power(1.0 - 2.0 * params.alpha, n_radial)
    d = params.delta
    return d * s, w * d ** (2.0 - 2.0 * params.alpha)


def k_planewave_multiplier(dim, params, xi_vector, n_radial=64, n_angle=64, n_polar=40):
    """
    Symbol of ``K`` on ``exp(-i xi.x)`` by direct cubature over the ball.

    Returns the complex number ``-2 kappa int_{B_delta} (1 - exp(i xi.y)) |y|^(-N-2alpha) dy``;
    the imaginary part vanishes up to rounding by symmetry.
    """
    dim = check_dim(dim)
    xi = np.atleast_1d(np.asarray(xi_vector, dtype=float))
    if xi.shape != (dim,):
        raise ValueError(f"xi_vector must have length {dim}")
    rho_nodes, rho_w = _radial_rule(params, n_radial)
    dirs, dir_w = ball_directions(dim, n_angle, n_polar)
    phase = np.outer(rho_nodes, dirs @ xi)  # rho * xi.n
    r2 = rho_nodes[:, None] ** 2
    real = 2.0 * np.sin(0.5 * phase) ** 2 / r2
    imag = -np.sin(phase) / r2
    integrand = (real + 1j * imag) @ dir_w
    return complex(-2.0 * params.kappa * np.sum(rho_w * integrand))


@dataclass(frozen=True)
class PlaneWaveCheck:
    """Direct multiplier against the spectral one, ``-rho omega^2(|xi|)``."""

    dim: int
    params: MaterialParams
    xi_vector: tuple
    multiplier_direct: complex
    multiplier_spectral: float

    @property
    def residual(self):
        return abs(self.multiplier_direct - self.multiplier_spectral)

    @property
    def rel_err(self):
        ref = abs(self.multiplier_spectral)
        return self.residual / ref if ref > 0 else self.residual


def planewave_check(dim, params, xi_vector, **kw):
    xi_vector = np.atleast_1d(np.asarray(xi_vector, dtype=float))
    direct = k_planewave_multiplier(dim, params, xi_vector, **kw)
    spectral = -params.rho * omega_squared(dim, params, float(np.linalg.norm(xi_vector)))
    return PlaneWaveCheck(dim, params, tuple(xi_vector), direct, float(spectral))


def k_apply_sampled(dim, params, field, x, n_radial=48, n_angle=64, n_polar=32):
    """
    Apply ``K`` to a sampled field at a point.

    Parameters
    ----------
    dim : {1, 2, 3}
    params : MaterialParams
    field : callable
        Vectorised ``field(positions)`` with ``positions`` of shape ``(..., dim)``.
    x : array_like
        Evaluation point of length ``dim``.
    """
    dim = check_dim(dim)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (dim,):
        raise ValueError(f"x must have length {dim}")
    rho_nodes, rho_w = _radial_rule(params, n_radial)
    dirs, dir_w = ball_directions(dim, n_angle, n_polar)
    pts = x + rho_nodes[:, None, None] * dirs[None, :, :]
    centre = float(np.asarray(field(x[None, :])).ravel()[0])
    diff = centre - np.asarray(field(pts), dtype=float)
    inner = (diff @ dir_w) / rho_nodes**2
    return float(-2.0 * params.kappa * np.sum(rho_w * inner))


def _radial_field(synth, t):
    return lambda pos: synth.evaluate(t, np.linalg.norm(np.asarray(pos), axis=-1))


def evolution_residual(dim, params, data, t, x, h, **kw):
    """
    Residual of ``rho u_tt = K u`` for the spectral solution at ``(t, x)``.

    ``u_tt`` is the centred second difference with step ``h``. ``data`` is a
    :class:`~peridispersion.solver.RadialSynthesizer` or a pair of radial
    spectra ``(v0_hat, v1_hat)``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if isinstance(data, RadialSynthesizer):
        synth = data
    else:
        v0_hat, v1_hat = data
        synth = RadialSynthesizer(dim, params, v0_hat, v1_hat, r_max=float(np.linalg.norm(x)) + params.delta)
    r = np.array([np.linalg.norm(x)])
    u_m, u_0, u_p = (synth.evaluate(s, r)[0] for s in (t - h, t, t + h))
    u_tt = (u_p - 2.0 * u_0 + u_m) / h**2
    ku = k_apply_sampled(dim, params, _radial_field(synth, t), x, **kw)
    return abs(u_tt - ku / params.rho)


# ---------------------------------------------------------------------------
# verification matrix

VERIFY_HEADER = ("check", "dim", "alpha", "xi_delta", "value", "reference", "rel_err", "pass")

PLANEWAVE_TOL = 1e-7
REALNESS_TOL = 1e-10
ROTATION_TOL = 1e-9


def _direction(dim, k):
    # fixed, irrational-looking directions so the checks are reproducible
    if dim == 1:
        return np.array([1.0])
    if dim == 2:
        a = 0.61803398875 * (k + 1)
        return np.array([np.cos(a), np.sin(a)])
    a, b = 0.61803398875 * (k + 1), 1.2360679775 * (k + 1)
    mu = np.cos(b)
    s = np.sqrt(1 - mu**2)
    return np.array([s * np.cos(a), s * np.sin(a), mu])


def verify_matrix(
    dims=(1, 2, 3),
    alphas=(0.1, 0.5, 0.9),
    xi_deltas=(0.1, 1.0, 10.0),
    kappa=1.0,
    rho=1.0,
    delta=1.0,
    planewave_tol=PLANEWAVE_TOL,
    realness_tol=REALNESS_TOL,
    rotation_tol=ROTATION_TOL,
    n_directions=4,
):
    """
    Run the plane-wave oracle over a parameter matrix.

    Returns a list of rows matching :data:`VERIFY_HEADER`: one ``planewave``
    and one ``realness`` row per ``(dim, alpha, xi_delta)`` and, in 2D and
    3D, one ``rotation`` row comparing ``n_directions`` directions.
    """
    rows = []
    for dim in dims:
        for alpha in alphas:
            params = MaterialParams(kappa=kappa, rho=rho, delta=delta, alpha=alpha)
            for xd in xi_deltas:
                xi = xd / delta
                chk = planewave_check(dim, params, xi * _direction(dim, 0))
                rel = chk.rel_err
                rows.append(
                    ("planewave", dim, alpha, xd, chk.multiplier_direct.real, chk.multiplier_spectral, rel, rel < planewave_tol)
                )
                re, im = chk.multiplier_direct.real, chk.multiplier_direct.imag
                ratio = abs(im) / abs(re)
                rows.append(("realness", dim, alpha, xd, abs(im), abs(re), ratio, ratio < realness_tol))
                if dim > 1:
                    vals = [
                        k_planewave_multiplier(dim, params, xi * _direction(dim, k)).real
                        for k in range(n_directions)
                    ]
                    spread = (max(vals) - min(vals)) / abs(vals[0])
                    rows.append(("rotation", dim, alpha, xd, max(vals), min(vals), spread, spread < rotation_tol))
    return rows
