"""Analytic benchmark: the optimal joint measurement on N probe copies.

For a pure probe, the rotation generator of the N-copy family has a
binomially weighted spectrum, and the joint measurement that minimizes the
Holevo variance has first moment ``mu = sum_k sqrt(q_k q_{k+1})`` over
adjacent spectral weights.  The curve is analytic only: no outcomes of the
joint measurement are ever sampled.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .bloch import ProbeConfig
from .errors import DegenerateMoment, MixedProbe

PURITY_TOL = 1e-9


@dataclass(frozen=True)
class SpectralWeights:
    """Weights of the N-copy rotation generator's eigenvalues ``N/2 - k``."""

    n: int
    log_q: np.ndarray

    @property
    def q(self) -> np.ndarray:
        return np.exp(self.log_q)

    def __post_init__(self):
        self.log_q.setflags(write=False)


def eigen_weights(probe: ProbeConfig, n: int) -> SpectralWeights:
    """Binomial spectral weights of ``n`` pure probe copies.

    ``q_k = C(n, k) alpha^(n-k) beta^k`` with ``alpha = (1 + a.n)/2`` and
    ``beta = (1 - a.n)/2``; computed in log space so ``n`` up to a few
    thousand stays finite.  Mixed probes are rejected: the weights assume a
    product of pure-state amplitudes.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    norm = float(np.linalg.norm(probe.a))
    if norm < 1.0 - PURITY_TOL:
        raise MixedProbe(f"entangled benchmark needs a pure probe, |a| = {norm!r}")
    an = float(np.dot(probe.a, probe.n))
    alpha = 0.5 * (1.0 + an)
    beta = 0.5 * (1.0 - an)
    k = np.arange(n + 1)
    log_q = (
        gammaln(n + 1)
        - gammaln(k + 1)
        - gammaln(n - k + 1)
        + (n - k) * np.log(alpha)
        + k * np.log(beta)
    )
    return SpectralWeights(n=n, log_q=log_q)


def ent_holevo_variance(probe: ProbeConfig, n: int) -> float:
    """Holevo variance of the optimal joint measurement on ``n`` copies.

    ``mu = sum_k sqrt(q_k q_{k+1})``; returns ``1/mu^2 - 1``.  For ``n = 1``
    this reduces to the single-copy covariant identity ``4/F - 1``.
    """
    weights = eigen_weights(probe, n)
    log_mu = logsumexp(0.5 * (weights.log_q[:-1] + weights.log_q[1:]))
    if log_mu < -690.0:
        raise DegenerateMoment(f"first moment underflowed, log mu = {log_mu!r}")
    return float(np.expm1(-2.0 * log_mu))
