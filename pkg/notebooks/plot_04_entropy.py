"""
One-site entropy
================

The reduced state of a single spin only depends on the magnetization.
The symmetric state has ``m = 0`` everywhere, hence one bit of entropy
on both sides of the transition.  With symmetry breaking ``m = 1`` in
the ferromagnetic phase and the entropy drops to zero.
"""

import matplotlib.pyplot as plt
import numpy as np

from xxz_ssb import entropy_one_site, sweep

for m in (0.0, 0.5, 1.0):
    print(m, entropy_one_site(m))

sw = sweep(-2.0, 0.0, 200)
plt.step(sw.grid, sw.signals["entropy_sym"], label="symmetric")
plt.step(sw.grid, sw.signals["entropy_ssb"], label="broken")
plt.ylim(-0.1, 1.1)
plt.xlabel("delta")
plt.ylabel("S (bits)")
plt.legend()
plt.savefig("entropy.png", dpi=120)
