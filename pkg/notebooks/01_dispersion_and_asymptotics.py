"""
Dispersion relations and their limits
=====================================

How fast does a plane wave of wavenumber xi oscillate in a linear
peridynamic medium, and how does that change between long and short
wavelengths?
"""

# %%
import numpy as np

from peridispersion import (
    MaterialParams,
    high_freq_closed_form,
    high_freq_coefficient,
    high_freq_quadrature,
    large_scale_group_velocity,
    low_freq_coefficient,
    omega_squared,
)

# %%
# omega^2 over seven decades of xi*delta, kappa = rho = delta = 1
# ----------------------------------------------------------------
xi = np.logspace(-3, 4, 8)
for alpha in (0.1, 0.5, 0.9):
    p = MaterialParams(alpha=alpha)
    print(f"alpha = {alpha}")
    for dim in (1, 2, 3):
        print(f"  N={dim}", np.array2string(omega_squared(dim, p, xi), precision=3))

# %%
# Long waves: omega^2 ~ c_low xi^2, the classical elastic regime
# --------------------------------------------------------------
# The ratio settles quickly; at xi*delta = 1e-3 it already agrees to 1e-7.
p = MaterialParams(alpha=0.5)
for dim in (1, 2, 3):
    c = low_freq_coefficient(dim, p)
    ratio = omega_squared(dim, p, 1e-3) / 1e-6
    print(f"N={dim}: c_low = {c:.6f}, omega^2/xi^2 at 1e-3 = {ratio:.6f}")

# %%
# Short waves: omega^2 ~ c_high xi^(2 alpha)
# ------------------------------------------
# The Gamma-function forms agree with direct quadrature of the
# oscillatory integrals to rounding.
for alpha in (0.1, 0.3, 0.7, 0.9):
    p = MaterialParams(alpha=alpha)
    row = [(high_freq_closed_form(d, p), high_freq_quadrature(d, p)) for d in (1, 2, 3)]
    print(alpha, ["%.10f / %.10f" % pair for pair in row])

# %%
# The approach to c_high is slow for small alpha. The missing piece is
# roughly C_N X^(-2 alpha) / (2 alpha) at X = xi*delta, about 15% at
# alpha = 0.1 even at X = 1e4.
for alpha in (0.1, 0.5, 0.9):
    p = MaterialParams(alpha=alpha)
    c = high_freq_coefficient(2, p)
    for X in (1e2, 1e3, 1e4, 1e6):
        rel = 1 - omega_squared(2, p, X) / X ** (2 * alpha) / c
        print(f"alpha={alpha}  X={X:.0e}  relative shortfall {rel:.3e}")

# %%
# Large-scale group velocity
# --------------------------
for dim in (2, 3):
    print(f"N={dim}", [round(large_scale_group_velocity(dim, MaterialParams(alpha=a)), 3) for a in (0.9, 0.5, 0.1)])
