"""Lock-step batch simulation of the maximum-likelihood estimation schemes.

Every repetition of a bootstrap owns one RNG stream, but repetitions advance
together: outcome coefficients, running grid log-likelihoods and maximizer
brackets are arrays whose rows are independent runs.  Row ``r`` never mixes
with other rows, so results are bit-identical no matter how a batch is
chunked across workers.

Each observed outcome contributes a log-likelihood term of the common shape
``log1p(A cos(theta) + B sin(theta))`` (additive constants are dropped; they
do not move maximizers):

* covariant draw ``x``:   ``A = r cos(x)``, ``B = r sin(x)``
* adaptive bit with sign ``s = 2x - 1`` and guess ``g``:
  ``A = -s r sin(g)``, ``B = s r cos(g)``

with ``r = sqrt(F)``.  Caching A and B keeps the hot maximizer loop free of
large-array trigonometry.
"""

from dataclasses import dataclass

import numpy as np

from .bloch import TWO_PI, ProbeConfig, circular_distance, wrap
from .circmax import GRID, GRID_SIZE, domain_mask, maximize_batch
from .sampling import sample_covariant

_COS_GRID = np.cos(GRID)
_SIN_GRID = np.sin(GRID)
_NEG_INF = -np.inf


class _LikelihoodBatch:
    """Accumulates per-run likelihood terms and evaluates them anywhere."""

    def __init__(self, n_runs, capacity):
        self.n_runs = n_runs
        self.a = np.empty((n_runs, capacity))
        self.b = np.empty((n_runs, capacity))
        self.used = 0
        self.grid_ll = np.zeros((n_runs, GRID_SIZE))

    def _push(self, a_col, b_col):
        k = self.used
        self.a[:, k] = a_col
        self.b[:, k] = b_col
        self.used = k + 1
        z = np.multiply.outer(a_col, _COS_GRID)
        z += np.multiply.outer(b_col, _SIN_GRID)
        np.maximum(z, -1.0, out=z)
        with np.errstate(divide="ignore"):  # log1p(-1) = -inf where the density is 0
            self.grid_ll += np.log1p(z)

    def add_covariant(self, draws, qfi):
        """Append covariant angle draws, one coefficient column per draw."""
        r = np.sqrt(qfi)
        for j in range(draws.shape[1]):
            x = draws[:, j]
            self._push(r * np.cos(x), r * np.sin(x))

    def add_adaptive(self, signs, guesses, qfi):
        """Append one two-outcome term per run (sign = +-1, guess angle)."""
        r = np.sqrt(qfi)
        self._push(-signs * r * np.sin(guesses), signs * r * np.cos(guesses))

    def evaluate(self, thetas, rows):
        """Shifted log-likelihood of each selected run at its own angle."""
        k = self.used
        a = self.a[rows, :k]
        b = self.b[rows, :k]
        c = np.cos(thetas)[:, None]
        s = np.sin(thetas)[:, None]
        z = a * c
        z += b * s
        np.maximum(z, -1.0, out=z)
        with np.errstate(divide="ignore"):
            return np.log1p(z).sum(axis=1)


@dataclass
class BatchOutcome:
    """Final state of a batch of runs (arrays indexed by run)."""

    estimates: np.ndarray
    boundary_hit: np.ndarray
    bad_ci: np.ndarray | None = None
    ci_centers: np.ndarray | None = None
    ci_half_width: float | None = None
    stage1_estimates: np.ndarray | None = None
    covariant_draws: np.ndarray | None = None
    outcomes: np.ndarray | None = None
    guesses: np.ndarray | None = None
    ci_center_history: np.ndarray | None = None


def _covariant_stage(generators, probe, theta_true, n_draws):
    draws = np.empty((len(generators), n_draws))
    for i, gen in enumerate(generators):
        draws[i] = sample_covariant(gen, probe, theta_true, n_draws)
    return draws


def _maximize_full(state):
    m = state.n_runs
    lo = np.zeros(m)
    hi = np.full(m, TWO_PI)
    return maximize_batch(state.grid_ll, lo, hi, state.evaluate)


def run_covariant_batch(generators, probe: ProbeConfig, theta_true, n_draws):
    """Independent covariant measurements followed by a full-circle MLE."""
    draws = _covariant_stage(generators, probe, theta_true, n_draws)
    state = _LikelihoodBatch(len(generators), n_draws)
    state.add_covariant(draws, probe.qfi)
    theta, _, at_boundary = _maximize_full(state)
    return BatchOutcome(estimates=theta, boundary_hit=at_boundary, covariant_draws=draws)


def _adaptive_phase(
    state,
    generators,
    probe,
    theta_true,
    n_steps,
    start_guess,
    centers,
    half_width,
    update_centers,
    track_history,
):
    """Advance ``n_steps`` adaptive measurements in lock step.

    ``centers``/``half_width`` describe the (possibly moving) restriction
    arc per run; ``half_width = pi`` means unrestricted.
    """
    m = state.n_runs
    r = np.sqrt(probe.qfi)
    uniforms = np.empty((m, n_steps)) if n_steps else np.empty((m, 0))
    for i, gen in enumerate(generators):
        if n_steps:
            uniforms[i] = gen.random(n_steps)

    guess = np.array(start_guess, dtype=float, copy=True)
    if guess.ndim == 0:
        guess = np.full(m, float(guess))
    estimates = guess.copy()
    boundary_any = np.zeros(m, dtype=bool)
    bits = np.zeros((m, n_steps), dtype=np.int8)
    guesses = np.zeros((m, n_steps))
    history = np.zeros((m, n_steps)) if track_history else None

    full_domain = half_width >= np.pi - 1e-12
    mask = None if full_domain else domain_mask(centers, half_width)
    lo_full = np.zeros(m)
    hi_full = np.full(m, TWO_PI)

    for k in range(n_steps):
        p1 = 0.5 * (1.0 + r * np.sin(theta_true - guess))
        x = uniforms[:, k] < p1
        signs = np.where(x, 1.0, -1.0)
        bits[:, k] = x
        guesses[:, k] = guess
        state.add_adaptive(signs, guess, probe.qfi)

        if full_domain:
            lo, hi, grid_vals = lo_full, hi_full, state.grid_ll
        else:
            lo = centers - half_width
            hi = centers + half_width
            grid_vals = np.where(mask, state.grid_ll, _NEG_INF)

        theta, _, at_boundary = maximize_batch(grid_vals, lo, hi, state.evaluate)
        boundary_any |= at_boundary
        estimates = theta
        guess = theta
        if update_centers and not full_domain:
            centers = theta
            mask = domain_mask(centers, half_width)
        if track_history:
            history[:, k] = centers

    return estimates, boundary_any, bits, guesses, centers, history


def run_aqse_batch(
    generators,
    probe: ProbeConfig,
    theta_true: float,
    n_steps: int,
    start_guess,
    center: float,
    half_width: float,
):
    """Adaptive two-outcome estimation over a fixed restriction arc.

    ``half_width = pi`` runs the unrestricted variant.  The first
    measurement is aimed at ``start_guess`` even if that angle lies outside
    the arc; estimates always stay inside it.
    """
    m = len(generators)
    state = _LikelihoodBatch(m, n_steps)
    centers = np.full(m, wrap(center))
    estimates, boundary_any, bits, guesses, _, _ = _adaptive_phase(
        state,
        generators,
        probe,
        theta_true,
        n_steps,
        start_guess,
        centers,
        half_width,
        update_centers=False,
        track_history=False,
    )
    return BatchOutcome(
        estimates=estimates,
        boundary_hit=boundary_any,
        outcomes=bits,
        guesses=guesses,
    )


def run_two_step_batch(
    generators,
    probe: ProbeConfig,
    theta_true: float,
    n_stage1: int,
    n_steps: int,
    half_width: float,
    update_centers: bool,
    track_history: bool = False,
):
    """Covariant stage followed by an adaptive stage restricted to the CI.

    The confidence arc keeps the half-width computed by the caller; with
    ``update_centers`` it is recentered on the joint MLE after every
    adaptive step, otherwise it stays where stage one put it.
    """
    m = len(generators)
    draws = _covariant_stage(generators, probe, theta_true, n_stage1)
    state = _LikelihoodBatch(m, n_stage1 + n_steps)
    state.add_covariant(draws, probe.qfi)
    stage1_theta, _, _ = _maximize_full(state)

    centers = stage1_theta.copy()
    estimates, boundary_any, bits, guesses, centers, history = _adaptive_phase(
        state,
        generators,
        probe,
        theta_true,
        n_steps,
        stage1_theta,
        centers,
        half_width,
        update_centers=update_centers,
        track_history=track_history,
    )
    if n_steps == 0:
        estimates = stage1_theta
    bad_ci = circular_distance(theta_true, centers) > half_width
    return BatchOutcome(
        estimates=estimates,
        boundary_hit=boundary_any,
        bad_ci=bad_ci,
        ci_centers=centers,
        ci_half_width=half_width,
        stage1_estimates=stage1_theta,
        covariant_draws=draws,
        outcomes=bits,
        guesses=guesses,
        ci_center_history=history,
    )
