"""
Numerical integration for the dispersion, transform and oracle modules.

Finite ranges go through :func:`adaptive_integrate` (QUADPACK's adaptive
Gauss-Kronrod with extrapolation) or through fixed composite rules when a
vectorised evaluation over many integrands is needed. Integrals of the form

    int_0^X (1 - K(tau)) / tau**(1 + 2 alpha) dtau,   K in {cos, J0, j0},

are handled by :func:`kernel_integral` (finite ``X``) and
:func:`integrate_oscillatory_tail` (any ``X``, including infinity).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special as sp

from .special import one_minus_kernel_over_x2, kernel

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "TailConvergenceError",
    "adaptive_integrate",
    "gauss_legendre",
    "gauss_jacobi_power",
    "composite_gauss_legendre",
    "panel_nodes",
    "kernel_integral",
    "kernel_zeros",
    "default_split_point",
    "integrate_oscillatory_tail",
]

KINDS = ("cosine", "bessel_j0", "spherical_j0")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for :func:`adaptive_integrate`."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 2**16

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


class QuadratureError(RuntimeError):
    """Adaptive integration did not reach the requested tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class TailConvergenceError(QuadratureError):
    """The accelerated inter-zero series of an oscillatory tail did not settle."""

    def __init__(self, message, estimate, error, partial_sums):
        super().__init__(message, estimate, error)
        self.partial_sums = np.asarray(partial_sums)


def adaptive_integrate(f, a, b, spec=None):
    """
    Integrate a scalar function over a finite interval.

    Parameters
    ----------
    f : callable
        Real function of one real variable, evaluated only in the open
        interval ``(a, b)``.
    a, b : float
        Finite limits with ``a < b``.
    spec : QuadratureSpec, optional

    Returns
    -------
    value, error : float
        Integral estimate and its absolute error estimate, with
        ``error <= max(abs_tol, rel_tol * |value|)``.

    Raises
    ------
    QuadratureError
        If the tolerance is not met within ``max_subdivisions`` panels; the
        best estimate is attached to the exception.
    """
    spec = spec or QuadratureSpec()
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise ValueError(f"need finite limits a < b, got a={a}, b={b}")
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(
                f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions
            )
        except integrate.IntegrationWarning as exc:
            # rerun silently to recover the best estimate for the caller
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                value, err = integrate.quad(
                    f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions
                )
            raise QuadratureError(f"adaptive quadrature failed: {exc}", value, err) from None
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError("adaptive quadrature tolerance not met", value, err)
    return value, err


@lru_cache(maxsize=64)
def gauss_legendre(n):
    """Gauss-Legendre nodes and weights on ``[0, 1]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=256)
def gauss_jacobi_power(power, n):
    """
    Nodes and weights on ``[0, 1]`` for the weight ``x**power`` (``power > -1``).

    ``sum(w * f(x))`` integrates ``x**power * f(x)`` exactly for polynomial
    ``f`` of degree ``2n - 1``.
    """
    if power <= -1:
        raise ValueError("power must exceed -1")
    s, w = sp.roots_jacobi(n, 0.0, power)
    x = 0.5 * (s + 1.0)
    w = w * 0.5 ** (power + 1.0)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(edges, order=16):
    """
    Nodes and weights of a composite Gauss-Legendre rule.

    Parameters
    ----------
    edges : array_like
        Increasing panel boundaries.
    order : int
        Points per panel.

    Returns
    -------
    nodes, weights : ndarray
        Flattened arrays of length ``order * (len(edges) - 1)``.
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    h = np.diff(edges)
    nodes = edges[:-1, None] + h[:, None] * x[None, :]
    weights = h[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def composite_gauss_legendre(f, edges, order=16):
    """Apply a composite Gauss-Legendre rule to a vectorised ``f``."""
    nodes, weights = panel_nodes(edges, order)
    return np.sum(weights * f(nodes))


# ---------------------------------------------------------------------------
# integrals of (1 - K(tau)) tau^(-1-2 alpha)

_GJ_ORDER = 40
_PANEL_ORDER = 20


def _check_kind_alpha(kind, alpha):
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def _head(kind, alpha, a):
    """int_0^a (1-K) tau^(-1-2alpha) for a <= 1, vectorised over a."""
    p = 1.0 - 2.0 * alpha
    s, w = gauss_jacobi_power(p, _GJ_ORDER)
    a = np.asarray(a, dtype=float)
    g = one_minus_kernel_over_x2(kind, a[..., None] * s)
    return a ** (p + 1.0) * np.sum(w * g, axis=-1)


def _integrand(kind, alpha, tau):
    return one_minus_kernel_over_x2(kind, tau) * tau ** (1.0 - 2.0 * alpha)


@lru_cache(maxsize=128)
def _cumulative_panels(kind, alpha, n_panels):
    # unit panels [1, 2], [2, 3], ...; entry k is int_1^(1+k)
    edges = np.arange(1.0, n_panels + 2.0)
    nodes, weights = panel_nodes(edges, _PANEL_ORDER)
    vals = (weights * _integrand(kind, alpha, nodes)).reshape(n_panels, _PANEL_ORDER)
    cum = np.concatenate([[0.0], np.cumsum(vals.sum(axis=1))])
    cum.setflags(write=False)
    return cum


def kernel_integral(kind, alpha, upper):
    """
    ``int_0^upper (1 - K(tau)) / tau**(1 + 2 alpha) dtau`` for finite ``upper``.

    The endpoint behaviour ``tau**(1 - 2 alpha)`` on ``[0, 1]`` is absorbed
    by a Gauss-Jacobi rule; the remainder uses unit-width Gauss-Legendre
    panels, accumulated once per ``(kind, alpha)`` and shared across calls.

    Parameters
    ----------
    kind : {'cosine', 'bessel_j0', 'spherical_j0'}
    alpha : float
        Exponent in ``(0, 1)``.
    upper : float or ndarray
        Nonnegative finite upper limit(s).
    """
    _check_kind_alpha(kind, alpha)
    x = np.asarray(upper, dtype=float)
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("upper limit must be finite and nonnegative")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = _head(kind, alpha, np.minimum(x, 1.0))
    far = x > 1.0
    if np.any(far):
        xf = x[far]
        n_needed = int(np.ceil(xf.max() - 1.0))
        n_panels = 1 << max(4, (n_needed - 1).bit_length())
        cum = _cumulative_panels(kind, float(alpha), n_panels)
        k = np.floor(xf - 1.0).astype(int)
        left = 1.0 + k
        gx, gw = gauss_legendre(_PANEL_ORDER)
        h = xf - left
        nodes = left[:, None] + h[:, None] * gx
        partial = h * np.sum(gw * _integrand(kind, alpha, nodes), axis=1)
        out[far] += cum[k] + partial
    return float(out[0]) if scalar else out


def default_split_point(alpha):
    """Split point between the direct part and the oscillatory remainder."""
    return max(1e3, 50.0 / (2.0 * alpha))


def kernel_zeros(kind, start, count):
    """
    The first ``count`` positive zeros of ``K`` that are ``>= start``.

    Bessel zeros come from McMahon's expansion refined by Newton steps.
    """
    if kind == "cosine":
        k0 = max(0, int(np.ceil(start / np.pi - 0.5)))
        return (np.arange(k0, k0 + count) + 0.5) * np.pi
    if kind == "spherical_j0":
        k0 = max(1, int(np.ceil(start / np.pi)))
        return np.arange(k0, k0 + count) * np.pi
    if kind == "bessel_j0":
        k0 = max(1, int(np.ceil(start / np.pi + 0.25)) - 1)
        beta = (np.arange(k0, k0 + count + 2) - 0.25) * np.pi
        b = 8.0 * beta
        z = beta + 1.0 / b + -124.0 / (3.0 * b**3) + 120928.0 / (15.0 * b**5)
        for _ in range(3):
            z = z + sp.j0(z) / sp.j1(z)
        z = z[z >= start]
        return z[:count]
    raise ValueError(f"unknown kernel {kind!r}")


def _wynn_epsilon(partial_sums):
    """Wynn's epsilon table; returns (best estimate, error estimate)."""
    s = np.asarray(partial_sums, dtype=float)
    n = len(s)
    e_prev = np.zeros(n + 1)
    e_curr = s.copy()
    estimates = [s[-1]]
    for k in range(1, n):
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = e_curr[1:] - e_curr[:-1]
            e_next = e_prev[1 : len(diff) + 1] + np.where(diff != 0, 1.0 / diff, np.inf)
        if k % 2 == 0:
            if not np.all(np.isfinite(e_next)):
                break
            estimates.append(e_next[-1])
        e_prev, e_curr = e_curr, e_next
        if len(e_curr) < 2:
            break
    if len(estimates) < 2:
        return estimates[-1], np.inf
    return estimates[-1], abs(estimates[-1] - estimates[-2])


def _oscillatory_remainder(kind, alpha, T, n_terms=48):
    """int_T^inf K(tau) tau^(-1-2 alpha) dtau by inter-zero summation."""
    zeros = kernel_zeros(kind, T, n_terms + 1)
    gx, gw = gauss_legendre(24)

    def piece(a, b):
        nodes = a[..., None] + (b - a)[..., None] * gx
        return (b - a) * np.sum(gw * kernel(kind, nodes) * nodes ** (-1.0 - 2.0 * alpha), axis=-1)

    # [T, first zero] is not part of the alternating series
    head = float(piece(np.float64(T), zeros[0])) if zeros[0] > T else 0.0
    pieces = piece(zeros[:-1], zeros[1:])
    partial = np.cumsum(pieces)
    value, err = _wynn_epsilon(partial)
    scale = max(1.0, abs(value))
    if not np.isfinite(value) or err > 1e-12 * scale:
        raise TailConvergenceError("oscillatory tail did not converge", head + value, err, head + partial)
    return head + value


def integrate_oscillatory_tail(kind, alpha, upper=np.inf, split=None):
    """
    ``int_0^upper (1 - K(tau)) / tau**(1 + 2 alpha) dtau`` for ``K`` in
    ``{cos, J0, j0}``.

    For an infinite upper limit the range is split at ``T``: the constant
    part over ``[T, inf)`` is integrated exactly as ``T**(-2 alpha)/(2 alpha)``
    and the oscillatory part by summing integrals between consecutive zeros
    of ``K`` with Wynn epsilon acceleration.

    Parameters
    ----------
    kind : {'cosine', 'bessel_j0', 'spherical_j0'}
    alpha : float
        Exponent in ``(0, 1)``.
    upper : float
        Upper limit, ``np.inf`` allowed.
    split : float, optional
        Split point ``T``; defaults to ``max(1e3, 50 / (2 alpha))``.

    Raises
    ------
    TailConvergenceError
        If the accelerated series fails to settle; partial sums are attached.
    """
    _check_kind_alpha(kind, alpha)
    if upper < 0:
        raise ValueError("upper limit must be nonnegative")
    if np.isfinite(upper):
        return kernel_integral(kind, alpha, upper)
    T = default_split_point(alpha) if split is None else float(split)
    direct = kernel_integral(kind, alpha, T)
    constant = T ** (-2.0 * alpha) / (2.0 * alpha)
    return direct + constant - _oscillatory_remainder(kind, alpha, T)
