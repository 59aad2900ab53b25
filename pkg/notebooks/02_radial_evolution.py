"""
Radial evolution of a Gaussian pulse
====================================

A Gaussian bump of width sigma is released from rest in 2D. With
sigma = delta the pulse travels as a ring at roughly the large-scale group
velocity; with sigma = delta/10 dispersion breaks it into a train of
ripples.
"""

# %%
import numpy as np

from peridispersion import MaterialParams, gaussian_spectrum, large_scale_group_velocity
from peridispersion.solver import RadialSynthesizer

# %%
# Ring radius against v_g t
# -------------------------
r = np.linspace(0, 15, 1501)
for alpha in (0.9, 0.5, 0.1):
    p = MaterialParams(alpha=alpha)
    synth = RadialSynthesizer(2, p, gaussian_spectrum(1.0, 2), r_max=r[-1])
    peaks = [float(r[np.argmax(synth.evaluate(t, r))]) for t in (0.0, 1.0, 2.0)]
    print(f"alpha={alpha}: peak radius {peaks}, v_g * 2 = {2 * large_scale_group_velocity(2, p):.2f}")

# %%
# Narrow versus wide pulses at alpha = 1/2
# ----------------------------------------
p = MaterialParams(alpha=0.5)
r = np.linspace(0, 8, 801)
for sigma in (1.0, 0.1):
    synth = RadialSynthesizer(2, p, gaussian_spectrum(sigma, 2), r_max=r[-1])
    for t in (0.0, 2.0):
        u = synth.evaluate(t, r)
        big = u[np.abs(u) > 1e-3 * np.abs(u).max()]
        changes = int(np.sum(np.diff(np.sign(big)) != 0))
        print(f"sigma={sigma} t={t}: max {u.max():.4f}, min {u.min():.4f}, sign changes {changes}")

# %%
# The single sign change of the wide pulse is the negative wake that any
# 2D wave leaves behind it; the narrow pulse shows several.

# %%
# Snapshot CSVs for plotting come from the command line:
#
#     peridispersion evolve --dim 2 --alpha 0.9 --sigma 1 --times 0,1,2 --out fig2.csv
