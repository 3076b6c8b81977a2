"""Circular statistics and the error bounds the simulations are judged by.

The dispersion measure throughout is the Holevo variance ``1/mu^2 - 1``,
where ``mu`` is the magnitude of the circular first moment (or, when the
true phase is known, the mean of ``cos(estimate - truth)``, which also
penalizes bias).
"""

import math
from dataclasses import dataclass

import numpy as np

from .bloch import ProbeConfig
from .errors import EmptySample, UndefinedVariance
from .measurements import covariant_fisher_closed

MU_FLOOR = 1e-12


@dataclass(frozen=True)
class CircularSummary:
    """First-moment summary of a sample of angles."""

    moment: complex
    mu: float
    holevo_variance: float
    count: int


def circular_first_moment(samples) -> complex:
    """Empirical first moment ``mean(exp(i x))`` of a sample of angles."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise EmptySample("circular first moment of an empty sample")
    return complex(np.exp(1j * samples).mean())


def holevo_variance(estimates, theta_true: float | None = None) -> float:
    """Holevo variance ``1/mu^2 - 1`` of a sample of estimates.

    Without ``theta_true`` the unbiased form ``mu = |mean(exp(i x))|`` is
    used; with it, the biased form ``mu = mean(cos(x - theta_true))``.
    """
    estimates = np.asarray(estimates, dtype=float)
    if estimates.size == 0:
        raise EmptySample("Holevo variance of an empty sample")
    if theta_true is None:
        mu = abs(circular_first_moment(estimates))
    else:
        mu = float(np.cos(estimates - theta_true).mean())
    if mu <= MU_FLOOR:
        raise UndefinedVariance(
            f"first moment {mu!r} is too small; estimates look uniform"
        )
    return mu ** -2 - 1.0


def circular_summary(estimates, theta_true: float | None = None) -> CircularSummary:
    """Bundle moment, mu and Holevo variance of a sample."""
    moment = circular_first_moment(estimates)
    mu = (
        abs(moment)
        if theta_true is None
        else float(np.cos(np.asarray(estimates) - theta_true).mean())
    )
    return CircularSummary(
        moment=moment,
        mu=mu,
        holevo_variance=mu ** -2 - 1.0 if mu > MU_FLOOR else math.inf,
        count=int(np.asarray(estimates).size),
    )


def qcrb(probe: ProbeConfig, n: int) -> float:
    """Quantum Cramer-Rao bound for ``n`` independent probes."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    return 1.0 / (n * probe.qfi)


def delta1_bound(probe: ProbeConfig, n1: int, n2: int) -> float:
    """Lower bound on the two-step error when the CI captures the phase.

    Information adds across stages: ``n2`` adaptive probes contribute the
    quantum Fisher information each, the ``n1`` covariant probes contribute
    the covariant Fisher information each.
    """
    if n1 < 0 or n2 < 0 or n1 + n2 < 1:
        raise ValueError(f"need n1, n2 >= 0 and n1 + n2 >= 1, got {n1}, {n2}")
    return 1.0 / (probe.qfi * n2 + n1 * covariant_fisher_closed(probe))


def two_step_lower_bound(
    probe: ProbeConfig, n1: int, n2: int, c_level: float, half_width: float
) -> float:
    """Holevo-variance floor of the fixed-center two-step scheme.

    The second term, ``(1 - c_level) * half_width^2``, is the residual error
    of confidence intervals that miss the phase; it dominates as the
    adaptive stage grows, since extra steps cannot rescue a bad interval.
    """
    if not 0.0 < c_level <= 1.0:
        raise ValueError(f"c_level must be in (0, 1], got {c_level!r}")
    if not 0.0 < half_width < np.pi:
        raise ValueError(f"half_width must be in (0, pi), got {half_width!r}")
    return delta1_bound(probe, n1, n2) + (1.0 - c_level) * half_width**2


def bad_ci_type1_prob(probe, n: int, eps: float) -> float:
    """Probability that a covariant sample peaks at the antipodal phase.

    The chance that all ``n`` covariant draws land within ``eps`` of the
    antipode is ``((eps - sqrt(F) sin(eps)) / pi) ** n`` (the window integral
    of the outcome density around the antipode, in closed form), evaluated
    in log space to survive large ``n``.  ``probe`` may be a
    :class:`ProbeConfig` or a bare Fisher-information value in [0, 1].
    """
    qfi = probe.qfi if isinstance(probe, ProbeConfig) else float(probe)
    if not 0.0 <= qfi <= 1.0:
        raise ValueError(f"Fisher information must be in [0, 1], got {qfi!r}")
    if not 0.0 < eps <= np.pi / 2:
        raise ValueError(f"eps must be in (0, pi/2], got {eps!r}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    window = (eps - math.sqrt(qfi) * math.sin(eps)) / math.pi
    if window <= 0.0:
        return 0.0
    return math.exp(n * math.log(window))
