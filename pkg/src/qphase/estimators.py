"""Phase estimators: closed-form and numeric MLEs, confidence intervals,
adaptive estimation, and the covariant-then-adaptive two-step scheme.

All maximizations share the grid-plus-golden-section machinery of
:mod:`qphase.circmax`; the simulation loops run on :mod:`qphase.engine` so a
single scalar run and a batched bootstrap follow exactly the same code path.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .bloch import TWO_PI, ProbeConfig, circular_distance, wrap
from .circmax import GRID, callable_batch, domain_mask, maximize_batch
from .engine import run_aqse_batch, run_two_step_batch
from .errors import EmptyDomain, InsufficientBudget
from .measurements import covariant_fisher_closed
from .sampling import RngStream

MIN_HALF_WIDTH = 1e-6


@dataclass(frozen=True)
class CircularInterval:
    """Closed arc on the circle: angles within ``half_width`` of ``center``.

    The full circle is represented by ``half_width = pi``.  Membership uses
    circular distance, so arcs crossing the 0/2pi seam need no special
    handling.
    """

    center: float
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0.0:
            raise EmptyDomain(f"half_width must be positive, got {self.half_width!r}")
        if self.half_width > np.pi + 1e-12:
            raise ValueError(f"half_width cannot exceed pi, got {self.half_width!r}")
        object.__setattr__(self, "center", float(wrap(self.center)))
        object.__setattr__(self, "half_width", float(min(self.half_width, np.pi)))

    @classmethod
    def full(cls) -> "CircularInterval":
        return cls(center=0.0, half_width=np.pi)

    @property
    def lo(self) -> float:
        """Unwrapped lower endpoint (may be negative)."""
        return self.center - self.half_width

    @property
    def hi(self) -> float:
        return self.center + self.half_width

    def is_full(self) -> bool:
        return self.half_width >= np.pi

    def contains(self, angle) -> bool | np.ndarray:
        return circular_distance(angle, self.center) <= self.half_width


@dataclass
class TraceFlags:
    bad_ci: bool = False
    boundary_hit: bool = False


@dataclass
class EstimationTrace:
    """Record of one estimation run.

    ``outcomes`` holds covariant draws as plain angles and adaptive outcomes
    as ``(bit, guess)`` pairs, in measurement order.  ``ci_history`` is empty
    unless the run used the two-step scheme.
    """

    outcomes: list = field(default_factory=list)
    guesses: list = field(default_factory=list)
    ci_history: list = field(default_factory=list)
    estimate: float = 0.0
    flags: TraceFlags = field(default_factory=TraceFlags)


def critical_value(c_level: float) -> float:
    """Two-sided standard-normal critical value for a confidence level.

    The conventional anchors 0.95 -> 1.96 and 0.99 -> 2.58 are returned
    exactly; other levels go through the inverse normal CDF.
    """
    if not 0.0 < c_level <= 1.0:
        raise ValueError(f"confidence level must be in (0, 1], got {c_level!r}")
    if c_level == 0.95:
        return 1.96
    if c_level == 0.99:
        return 2.58
    if c_level == 1.0:
        return math.inf
    return float(ndtri(0.5 * (1.0 + c_level)))


def min_sample_size(c: float, fisher: float, half_width_target: float) -> int:
    """Smallest sample size whose CRB-width CI is at most the target width."""
    if c <= 0 or fisher <= 0 or half_width_target <= 0:
        raise ValueError("c, fisher and half_width_target must all be positive")
    return int(math.ceil(c * c / (fisher * half_width_target**2)))


def confidence_interval(estimate: float, n1: int, fisher: float, c: float) -> CircularInterval:
    """Asymptotic-normal CI of half-width ``c / sqrt(n1 * fisher)``.

    The half-width is capped at pi (full circle) and floored at 1e-6 so the
    interval never degenerates to a point.
    """
    if n1 < 1:
        raise ValueError(f"n1 must be at least 1, got {n1!r}")
    half = c / math.sqrt(n1 * fisher)
    half = max(min(half, np.pi), MIN_HALF_WIDTH)
    return CircularInterval(center=estimate, half_width=half)


def mle_two_outcome(zeros: int, total: int, orientation: float, qfi: float):
    """Both maximizers of the two-outcome likelihood after ``total`` shots.

    With ``m`` zeros among ``total`` outcomes the score is
    ``s = (1 - 2 m / total) / sqrt(F)``, clamped to [-1, 1] (finite-sample
    noise can push it outside; clamping is boundary maximization), and the
    maximizers are the two solutions of ``sin(theta - g) = s``.  At
    ``s = +-1`` they coincide and the returned pair repeats one value.
    """
    if not 0 <= zeros <= total or total < 1:
        raise ValueError(f"need 0 <= zeros <= total and total >= 1, got {zeros}/{total}")
    if not 0.0 < qfi <= 1.0:
        raise ValueError(f"qfi must be in (0, 1], got {qfi!r}")
    s = (1.0 - 2.0 * zeros / total) / math.sqrt(qfi)
    s = min(1.0, max(-1.0, s))
    alpha = math.asin(s)
    return (float(wrap(orientation + alpha)), float(wrap(orientation + math.pi - alpha)))


def _domain_bounds(domain: CircularInterval):
    if domain.is_full():
        return np.zeros(1), np.full(1, TWO_PI), np.ones((1, GRID.size), dtype=bool)
    mask = domain_mask(np.array([domain.center]), np.array([domain.half_width]))
    return np.array([domain.lo]), np.array([domain.hi]), mask


def mle_circular(log_likelihood, domain: CircularInterval, return_info: bool = False):
    """Global maximizer of a log-likelihood over a circular interval.

    ``log_likelihood`` must accept a numpy array of angles in [0, 2 pi) and
    return the log-likelihood values (``-inf`` is fine where the likelihood
    vanishes).  A coarse 720-point scan is refined by golden section to
    1e-10; ties within 1e-12 resolve to the smallest canonical angle, and a
    maximum on a closed boundary of a restricted domain returns the boundary
    itself.

    With ``return_info=True`` returns ``(theta, at_boundary)``.
    """
    if not domain.half_width > 0.0:
        raise EmptyDomain("maximization domain has non-positive half-width")
    lo, hi, mask = _domain_bounds(domain)
    grid_vals = np.where(
        mask, np.asarray(log_likelihood(GRID), dtype=float)[None, :], -np.inf
    )
    evaluate = callable_batch(log_likelihood)
    theta, _, at_boundary = maximize_batch(grid_vals, lo, hi, evaluate)
    if return_info:
        return float(theta[0]), bool(at_boundary[0])
    return float(theta[0])


def count_local_maxima(log_likelihood, domain: CircularInterval, rel_tol: float) -> int:
    """Number of near-global local maxima on the 720-point scan.

    A maximum counts when its likelihood is within ``rel_tol`` (relative, in
    likelihood units) of the global one.  Adjacent equal values merge into a
    single plateau, so a constant likelihood counts as one maximum.
    """
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must be in (0, 1), got {rel_tol!r}")
    lo, hi, mask = _domain_bounds(domain)
    values = np.asarray(log_likelihood(GRID), dtype=float)

    if domain.is_full():
        inside = values
        circular = True
    else:
        pos = np.mod(GRID - lo[0], TWO_PI)
        keep = mask[0]
        order = np.argsort(pos[keep])
        inside = values[keep][order]
        circular = False
    if inside.size == 0:
        return 0

    # Collapse plateaus (runs of exactly equal values) to single nodes.
    change = np.nonzero(np.diff(inside) != 0.0)[0]
    run_vals = inside[np.concatenate([change, [inside.size - 1]])]
    if circular and run_vals.size > 1 and run_vals[0] == run_vals[-1]:
        run_vals = run_vals[:-1]
    if run_vals.size == 1:
        return 1

    if circular:
        left = np.roll(run_vals, 1)
        right = np.roll(run_vals, -1)
        is_max = (run_vals > left) & (run_vals > right)
    else:
        left = np.concatenate([[-np.inf], run_vals[:-1]])
        right = np.concatenate([run_vals[1:], [-np.inf]])
        is_max = (run_vals > left) & (run_vals > right)

    threshold = run_vals.max() + math.log1p(-rel_tol)
    return int(np.count_nonzero(is_max & (run_vals >= threshold)))


def two_outcome_log_likelihood(zeros: int, total: int, orientation: float, qfi: float):
    """Vectorized log-likelihood of ``zeros`` zeros in ``total`` shots."""
    r = math.sqrt(qfi)
    ones = total - zeros

    def loglik(theta):
        z = r * np.sin(np.asarray(theta, dtype=float) - orientation)
        out = np.zeros_like(z)
        with np.errstate(divide="ignore"):
            if zeros:
                out = out + zeros * np.log(np.maximum(0.5 * (1.0 - z), 0.0))
            if ones:
                out = out + ones * np.log(np.maximum(0.5 * (1.0 + z), 0.0))
        return out

    return loglik


def covariant_log_likelihood(draws, qfi: float):
    """Vectorized log-likelihood of a sample of covariant outcome angles."""
    draws = np.atleast_1d(np.asarray(draws, dtype=float))
    r = math.sqrt(qfi)

    def loglik(theta):
        theta = np.asarray(theta, dtype=float)
        z = r * np.cos(draws[None, :] - theta.reshape(-1, 1))
        out = np.log1p(np.maximum(z, -1.0)).sum(axis=1) - draws.size * np.log(TWO_PI)
        return out if theta.ndim else out[0]

    return loglik


def _generators(rng: RngStream, count: int = 1):
    return [rng.generator() for _ in range(count)]


def aqse_run(
    rng: RngStream,
    probe: ProbeConfig,
    theta_true: float,
    n: int,
    g0: float = 0.0,
    domain: CircularInterval | None = None,
) -> EstimationTrace:
    """Adaptive estimation: re-aim the two-outcome POVM at the running MLE.

    Each step measures with the POVM aimed at the previous guess, appends
    the outcome to the accumulated log-likelihood, and re-maximizes over
    ``domain`` (the full circle when None: the unrestricted variant).
    """
    if n < 1:
        raise ValueError(f"need at least one step, got n = {n!r}")
    if domain is None:
        domain = CircularInterval.full()
    out = run_aqse_batch(
        _generators(rng),
        probe,
        theta_true,
        n,
        start_guess=wrap(g0),
        center=domain.center,
        half_width=domain.half_width,
    )
    guesses = [float(g) for g in out.guesses[0]]
    trace = EstimationTrace(
        outcomes=[(int(b), g) for b, g in zip(out.outcomes[0], guesses)],
        guesses=guesses,
        estimate=float(out.estimates[0]),
        flags=TraceFlags(bad_ci=False, boundary_hit=bool(out.boundary_hit[0])),
    )
    return trace


def two_step_plan(probe: ProbeConfig, c_level: float, half_width: float):
    """Stage-one sample size and CI half-width for the two-step scheme.

    Returns ``(n1, hw)``: the covariant sample size meeting the target
    margin at the requested confidence, and the CI half-width actually used
    (the CRB width, clamped to the target margin).
    """
    c = critical_value(c_level)
    fisher = covariant_fisher_closed(probe)
    if math.isinf(c):
        raise ValueError("confidence level 1.0 needs an infinite sample; use c_level < 1")
    n1 = min_sample_size(c, fisher, half_width)
    hw = confidence_interval(0.0, n1, fisher, c).half_width
    return n1, min(hw, half_width)


def two_step_run(
    rng: RngStream,
    probe: ProbeConfig,
    theta_true: float,
    n: int,
    c_level: float,
    half_width: float,
    update_centers: bool = True,
) -> EstimationTrace:
    """Covariant stage one (CI construction) plus CI-restricted adaptation.

    Stage one spends the minimum covariant sample for the requested margin
    and confidence, maximizes over the full circle and centers the CI there.
    Stage two spends the remaining ``n - n1`` probes adaptively: the POVM is
    aimed at the running joint MLE (covariant and adaptive terms together),
    maximized over the CI; with ``update_centers`` the CI follows the MLE.
    """
    n1, hw = two_step_plan(probe, c_level, half_width)
    if n < n1:
        raise InsufficientBudget(
            f"two-step scheme needs at least {n1} probes at this confidence "
            f"and margin, got {n!r}"
        )
    out = run_two_step_batch(
        _generators(rng),
        probe,
        theta_true,
        n_stage1=n1,
        n_steps=n - n1,
        half_width=hw,
        update_centers=update_centers,
        track_history=True,
    )
    guesses = [float(g) for g in out.guesses[0]]
    outcomes: list = [float(x) for x in out.covariant_draws[0]]
    outcomes.extend((int(b), g) for b, g in zip(out.outcomes[0], guesses))
    ci_history = [CircularInterval(float(out.stage1_estimates[0]), hw)]
    if update_centers and out.ci_center_history is not None:
        ci_history.extend(
            CircularInterval(float(cc), hw) for cc in out.ci_center_history[0]
        )
    return EstimationTrace(
        outcomes=outcomes,
        guesses=guesses,
        ci_history=ci_history,
        estimate=float(out.estimates[0]),
        flags=TraceFlags(
            bad_ci=bool(out.bad_ci[0]), boundary_hit=bool(out.boundary_hit[0])
        ),
    )
