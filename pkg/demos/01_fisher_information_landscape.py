"""Fisher information of the measurement families, as a picture.

Two panels:
 * information of the two-outcome measurement versus the aim offset, for a
   few probe settings: it peaks (at the probe's quantum Fisher information)
   when the measurement is aimed exactly at the phase, and collapses a
   quarter turn away -- except at full information where it is flat;
 * information of the optimal covariant measurement versus the quantum
   Fisher information: the closed form 1 - sqrt(1 - F) together with the
   numerical quadrature of the outcome density, which should sit exactly on
   top of it.

Run:  python demos/01_fisher_information_landscape.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qphase import (
    TwoOutcomePovm,
    covariant_density,
    covariant_fisher_closed,
    covariant_score,
    fisher_by_quadrature,
    make_probe,
    two_outcome_fisher,
)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

offsets = np.linspace(-np.pi / 2 + 0.02, np.pi / 2 - 0.02, 301)
for f in (0.25, 0.5, 0.75, 0.999):
    probe = make_probe((np.sqrt(f), 0, 0), (0, 0, 1))
    povm = TwoOutcomePovm(orientation=0.0, probe=probe)
    info = [two_outcome_fisher(povm, delta) for delta in offsets]
    ax1.plot(offsets, info, label=f"F = {f:g}")
ax1.set_xlabel("phase minus aim (rad)")
ax1.set_ylabel("Fisher information")
ax1.set_title("two-outcome measurement")
ax1.legend()

fs = np.linspace(0.05, 1.0, 30)
closed = [1 - np.sqrt(1 - f) for f in fs]
quad = []
for f in fs:
    probe = make_probe((np.sqrt(f), 0, 0), (0, 0, 1))
    quad.append(
        fisher_by_quadrature(
            lambda that, theta, p=probe: covariant_density(p, theta, that),
            1.0,
            score=lambda that, theta, p=probe: covariant_score(p, theta, that),
        )
    )
ax2.plot(fs, closed, label="closed form")
ax2.plot(fs, quad, "x", label="quadrature")
ax2.plot(fs, fs, ":", color="gray", label="quantum limit")
ax2.set_xlabel("quantum Fisher information")
ax2.set_ylabel("covariant Fisher information")
ax2.set_title("optimal covariant measurement")
ax2.legend()

fig.tight_layout()
fig.savefig("fisher_information_landscape.png", dpi=120)
print("wrote fisher_information_landscape.png")
print("max |quadrature - closed| =", max(abs(a - b) for a, b in zip(quad, closed)))
