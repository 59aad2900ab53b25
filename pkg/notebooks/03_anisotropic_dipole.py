"""
Anisotropic data: a dipole in 3D
================================

Initial data (2 pi)^(3/2) exp(-r^2/(2 sigma^2)) r cos(theta) has a single
spherical-harmonic channel, (1, 0). Each channel evolves on its own, so
the cos(theta) shape is carried along unchanged.
"""

# %%
import numpy as np

from peridispersion import MaterialParams, dipole_field, dipole_initial_condition, multipole_decompose
from peridispersion.solver import AnisotropicSynthesizer

sigma = 0.1
p = MaterialParams(alpha=0.5)

# %%
# Decomposition keeps one channel
# -------------------------------
ms = multipole_decompose(dipole_field(sigma), ell_max=4, decay_scale=sigma)
rs = np.linspace(0, 5 * sigma, 21)
for key in ms.channels():
    print(key, f"{np.max(np.abs(ms.radial(*key, 0, rs))):.3e}")

# %%
# Evolution at t = 0, 2, 4 along the axis and at 60 degrees
# ---------------------------------------------------------
synth = AnisotropicSynthesizer(p, dipole_initial_condition(sigma), r_max=10.0)
r = np.linspace(0, 10, 201)
for t in (0.0, 2.0, 4.0):
    axis = synth.evaluate(t, r, 0.0, 0.0)
    tilted = synth.evaluate(t, r, np.pi / 3, 0.0)
    i = np.argmax(np.abs(axis))
    print(f"t={t}: peak radius {r[i]:.2f}, tilted/axis ratio {tilted[i] / axis[i]:.4f}")

# %%
# Initial data recovered by the spherical Bessel closure
# ------------------------------------------------------
rr = np.linspace(0, 5 * sigma, 30)
th = np.linspace(0, np.pi, 7)
R, TH = np.meshgrid(rr, th)
err = np.max(np.abs(synth.evaluate(0.0, R, TH, 0.0) - dipole_field(sigma)(R, TH)))
print(f"max |u(0) - v0| = {err:.2e}")
