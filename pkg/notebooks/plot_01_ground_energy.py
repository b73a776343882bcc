"""
Ground-state energy across the ferromagnetic transition
=======================================================

The energy per site (divided by 4) is ``delta/4`` in the ferromagnetic
phase and a contour integral in the gapless phase.  Both pieces meet
continuously at ``delta = -1``; the slope changes there.
"""

import math

import matplotlib.pyplot as plt
import numpy as np

from xxz_ssb import ground_energy
from xxz_ssb.bethe import energy_slope

# %%
# Closed-form checkpoints: the XX point and the isotropic antiferromagnet.
print("e0(0)  =", ground_energy(0.0).e0, " -1/pi =", -1 / math.pi)
print("e0(1)  =", ground_energy(1.0).e0, " 1/4 - ln2 =", 0.25 - math.log(2))
print("e0(-2) =", ground_energy(-2.0).e0)

# %%
# The quadrature reports its own error estimate and the discarded
# imaginary part of the contour integral.
res = ground_energy(0.3)
print(res)

# %%
# Energy and slope over the full range.  Left of the transition the slope
# is exactly 1/4; right of it the slope vanishes like a square root.
deltas = np.linspace(-2.0, 0.99, 300)
deltas = deltas[np.abs(deltas + 1) > 1e-6]
e0 = np.array([ground_energy(d).e0 for d in deltas])
slope = np.array([energy_slope(d)[0] for d in deltas])

for eps in (1e-2, 1e-4, 1e-6):
    print(f"slope at -1+{eps:g}: {energy_slope(-1 + eps)[0]:.6f}")

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
ax1.plot(deltas, e0)
ax1.set_ylabel("e0")
ax2.plot(deltas, slope)
ax2.set_ylabel("de0/d delta")
ax2.set_xlabel("delta")
fig.savefig("ground_energy.png", dpi=120)
