"""Deterministic, splittable random generation of measurement outcomes.

All randomness flows through :class:`RngStream`, a (seed, stream) pair backed
by the counter-based Philox generator, so identical inputs reproduce identical
outputs on any platform.  :func:`split` derives statistically independent
child streams; it is a pure function, so repetition ``i`` of a bootstrap can
always be handed ``split(master, i)`` no matter how work is scheduled.

Angle draws from the covariant families use rejection sampling with a uniform
proposal: the densities are bounded by ``(1 + r) / (2 pi)`` with ``r`` the
magnitude of their single harmonic, so a proposal is accepted with probability
``density / envelope`` and the expected number of proposals per draw is
``1 + r <= 2``.
"""

from dataclasses import dataclass

import numpy as np

from .bloch import TWO_PI, ProbeConfig
from .measurements import CovariantPovm, TwoOutcomePovm, _coupling, two_outcome_prob

_MASK64 = 0xFFFFFFFFFFFFFFFF


def _splitmix64(z: int) -> int:
    """One round of the splitmix64 mixer (64-bit avalanche)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngStream:
    """Seedable random stream identified by (seed, stream id).

    Each stream should be owned by exactly one worker; derive children with
    :func:`split` rather than sharing.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh Philox generator keyed by (seed, stream)."""
        key = ((self.seed & _MASK64) << 64) | (self.stream & _MASK64)
        return np.random.Generator(np.random.Philox(key=key))


def split(master: RngStream, index: int) -> RngStream:
    """Pure derivation of the ``index``-th child stream of ``master``.

    Children of distinct indexes, and children reached along different split
    paths, have distinct stream ids and therefore independent Philox keys.
    """
    child = _splitmix64(_splitmix64(master.stream & _MASK64) ^ _splitmix64(index & _MASK64))
    return RngStream(seed=master.seed, stream=child)


def sample_two_outcome(rng, povm: TwoOutcomePovm, theta: float) -> int:
    """Draw one 0/1 outcome of the two-outcome POVM at the true phase."""
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    return int(gen.random() < two_outcome_prob(povm, theta, 1))


def rejection_sample_circular(gen: np.random.Generator, density, envelope: float, size: int):
    """Draw ``size`` angles from a circular density bounded by ``envelope``.

    ``density`` maps an angle array to per-radian density values.  Returns
    ``(draws, n_proposals)``; the proposal count is exposed so callers can
    audit the acceptance rate.  Proposals are consumed from ``gen`` in fixed
    chunks, which keeps the draw deterministic for a given generator state.
    """
    out = np.empty(size)
    filled = 0
    proposals = 0
    # Expected acceptance is 1/(envelope * 2 pi); 20% headroom per chunk.
    chunk = max(16, int(size * envelope * TWO_PI * 1.2) + 1)
    while filled < size:
        u = gen.random((chunk, 2))
        cand = u[:, 0] * TWO_PI
        hits = np.nonzero(u[:, 1] * envelope < density(cand))[0]
        take = min(size - filled, hits.size)
        out[filled : filled + take] = cand[hits[:take]]
        filled += take
        # count proposals only up to the last one actually consumed
        proposals += chunk if take == hits.size else int(hits[take - 1]) + 1
    return out, proposals


def sample_covariant(rng, probe: ProbeConfig, theta: float, size: int | None = None):
    """Draw outcome angles of the optimal covariant measurement.

    Returns a scalar when ``size`` is None, else an array of ``size`` draws.
    """
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    r = np.sqrt(probe.qfi)
    envelope = (1.0 + r) / TWO_PI

    def density(that):
        return (1.0 + r * np.cos(that - theta)) / TWO_PI

    draws, _ = rejection_sample_circular(gen, density, envelope, 1 if size is None else size)
    return float(draws[0]) if size is None else draws


def sample_general_covariant(rng, povm: CovariantPovm, theta: float, size: int | None = None):
    """Draw outcome angles of the direction-``d`` covariant measurement."""
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    ca, sa = _coupling(povm)
    envelope = (1.0 + np.hypot(ca, sa)) / TWO_PI

    def density(that):
        delta = that - theta
        return (1.0 + ca * np.cos(delta) - sa * np.sin(delta)) / TWO_PI

    draws, _ = rejection_sample_circular(gen, density, envelope, 1 if size is None else size)
    return float(draws[0]) if size is None else draws
