"""Why two-outcome likelihoods need help: twin peaks vs a single one.

Left: the likelihood of 64 two-outcome measurements all aimed at the same
angle when half the outcomes were ones -- it has two exactly-tied maxima, so
no amount of data picks the right phase.  Right: the likelihood of 64
covariant outcomes drawn at the same true phase -- one clear peak.

Run:  python demos/03_likelihood_identifiability.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qphase import (
    CircularInterval,
    RngStream,
    count_local_maxima,
    covariant_log_likelihood,
    make_probe,
    sample_covariant,
    two_outcome_log_likelihood,
)

THETA = 2.0
AIM = 1.5

grid = np.linspace(0, 2 * np.pi, 2048)
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

two_outcome = two_outcome_log_likelihood(32, 64, AIM, 0.75)
curve = np.exp(two_outcome(grid) - two_outcome(grid).max())
ax1.plot(grid, curve)
ax1.axvline(THETA, color="red", ls=":", label="true phase")
ax1.set_title(
    f"two-outcome, balanced counts: "
    f"{count_local_maxima(two_outcome, CircularInterval.full(), 0.5)} tied maxima"
)
ax1.set_xlabel("phase (rad)")
ax1.set_ylabel("likelihood (rescaled)")
ax1.legend()

probe = make_probe((1, 0, 0), (0, 0, 1))
draws = sample_covariant(RngStream(64), probe, THETA, size=64)
cov = covariant_log_likelihood(draws, 1.0)
curve = np.exp(cov(grid) - cov(grid).max())
ax2.plot(grid, curve)
ax2.axvline(THETA, color="red", ls=":", label="true phase")
ax2.set_title(
    f"covariant sample: "
    f"{count_local_maxima(cov, CircularInterval.full(), 0.5)} near-global maximum"
)
ax2.set_xlabel("phase (rad)")
ax2.legend()

fig.tight_layout()
fig.savefig("likelihood_identifiability.png", dpi=120)
print("wrote likelihood_identifiability.png")
