"""Global maximization of log-likelihoods over circular intervals.

The maximizer is a coarse scan over a fixed 720-point grid of the circle
(0.5 degree resolution, which cannot skip the basin of a likelihood with
O(1) curvature) followed by golden-section refinement of the best bracket
down to 1e-10.  It is written over batches: row ``r`` of every array is an
independent maximization, so thousands of bootstrap repetitions advance in
lock step through vectorized numpy operations.  Domains are arcs given as
unwrapped bounds ``[lo, hi]`` with ``0 < hi - lo <= 2 pi``; a span of
``2 pi`` means the full circle.

Ties (values within 1e-12) are broken toward the smallest canonical angle.
Exactly tied twin peaks are handled by refining the best grid basin away
from the primary one whenever it comes within 1e-9 of the grid maximum.
If the maximum of a restricted domain sits on a closed boundary, the
boundary point itself is returned and flagged.
"""

import numpy as np

from .bloch import TWO_PI, wrap

GRID_SIZE = 720
GRID_STEP = TWO_PI / GRID_SIZE
GRID = np.arange(GRID_SIZE) * GRID_STEP

REFINE_TOL = 1e-10
TIE_TOL = 1e-12
BASIN_TOL = 1e-9

_INV_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
# Bracket width starts at <= 2 grid steps; iterations to shrink below tolerance.
_N_GOLDEN = int(np.ceil(np.log(REFINE_TOL / (2.0 * GRID_STEP)) / np.log(_INV_GOLDEN))) + 2

_FULL_SPAN = TWO_PI - 1e-12


def domain_mask(centers, half_widths):
    """Boolean (rows, GRID_SIZE) mask of grid points inside each arc."""
    d = GRID[None, :] - np.atleast_1d(centers)[:, None]
    d = np.abs(np.mod(d + np.pi, TWO_PI) - np.pi)
    return d <= np.atleast_1d(half_widths)[:, None] + 1e-12


def _golden(evaluate, rows, a, b):
    """Vectorized golden-section maximization on brackets [a, b]."""
    w = b - a
    x1 = b - _INV_GOLDEN * w
    x2 = a + _INV_GOLDEN * w
    f1 = evaluate(x1, rows)
    f2 = evaluate(x2, rows)
    for _ in range(_N_GOLDEN):
        left = f1 >= f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        w = b - a
        x1 = b - _INV_GOLDEN * w
        x2 = a + _INV_GOLDEN * w
        xe = np.where(left, x1, x2)
        fe = evaluate(xe, rows)
        f1_old = f1
        f1 = np.where(left, fe, f2)
        f2 = np.where(left, f1_old, fe)
    t = 0.5 * (a + b)
    return t, evaluate(t, rows)


def maximize_batch(grid_values, lo, hi, evaluate):
    """Maximize one log-likelihood per row over its arc.

    Parameters
    ----------
    grid_values : (rows, GRID_SIZE) array
        Log-likelihood at the fixed grid angles; ``-inf`` outside the domain.
    lo, hi : (rows,) arrays
        Unwrapped arc bounds, ``0 < hi - lo <= 2 pi``.
    evaluate : callable
        ``evaluate(thetas, rows)`` returning the log-likelihood of each row
        in ``rows`` at the corresponding (possibly unwrapped) angle.

    Returns
    -------
    theta : (rows,) canonical angles of the maximizers
    value : (rows,) log-likelihood at the maximizers
    at_boundary : (rows,) bool, True when a closed arc boundary was returned
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    m = grid_values.shape[0]
    full = (hi - lo) >= _FULL_SPAN
    arc = ~full
    all_rows = np.arange(m)

    j_star = np.argmax(grid_values, axis=1)
    v_star = grid_values[all_rows, j_star]

    # Grid-level local maxima (out-of-domain neighbors are -inf).
    left_ok = grid_values >= np.roll(grid_values, 1, axis=1)
    right_ok = grid_values >= np.roll(grid_values, -1, axis=1)
    is_lmax = left_ok & right_ok & np.isfinite(grid_values)

    # Best local maximum outside the primary basin, kept when it ties the
    # grid maximum closely enough that refinement could flip the winner.
    dj = np.abs(np.arange(GRID_SIZE)[None, :] - j_star[:, None])
    far = np.minimum(dj, GRID_SIZE - dj) > 2
    second_vals = np.where(is_lmax & far, grid_values, -np.inf)
    j_second = np.argmax(second_vals, axis=1)
    v_second = second_vals[all_rows, j_second]
    has_second = np.isfinite(v_second) & (v_second >= v_star - BASIN_TOL)

    def unwrapped(j):
        return lo + np.mod(GRID[j] - lo, TWO_PI)

    # Primary bracket: one grid step either side, clipped to the arc.  Rows
    # whose arc contains no grid point fall back to the whole (tiny) arc.
    t0 = unwrapped(j_star)
    empty = ~np.isfinite(v_star)
    t0 = np.where(empty, 0.5 * (lo + hi), t0)
    a = t0 - GRID_STEP
    b = t0 + GRID_STEP
    a = np.where(arc | empty, np.maximum(a, lo), a)
    b = np.where(arc | empty, np.minimum(b, hi), b)

    cand_t = np.full((m, 4), np.nan)
    cand_v = np.full((m, 4), -np.inf)

    t_ref, v_ref = _golden(evaluate, slice(None), a, b)
    cand_t[:, 0] = t_ref
    cand_v[:, 0] = v_ref

    idx2 = np.nonzero(has_second)[0]
    if idx2.size:
        t2 = unwrapped(j_second)[idx2]
        a2 = t2 - GRID_STEP
        b2 = t2 + GRID_STEP
        a2 = np.where(arc[idx2], np.maximum(a2, lo[idx2]), a2)
        b2 = np.where(arc[idx2], np.minimum(b2, hi[idx2]), b2)
        t2_ref, v2_ref = _golden(evaluate, idx2, a2, b2)
        cand_t[idx2, 1] = t2_ref
        cand_v[idx2, 1] = v2_ref

    idx_arc = np.nonzero(arc)[0]
    if idx_arc.size:
        cand_t[idx_arc, 2] = lo[idx_arc]
        cand_v[idx_arc, 2] = evaluate(lo[idx_arc], idx_arc)
        cand_t[idx_arc, 3] = hi[idx_arc]
        cand_v[idx_arc, 3] = evaluate(hi[idx_arc], idx_arc)

    best = np.max(cand_v, axis=1)
    eligible = (cand_v >= best[:, None] - TIE_TOL) & ~np.isnan(cand_t)
    wrapped = np.where(eligible, wrap(np.nan_to_num(cand_t)), np.inf)
    pick = np.argmin(wrapped, axis=1)

    theta = wrap(cand_t[all_rows, pick])
    value = cand_v[all_rows, pick]
    at_boundary = arc & (pick >= 2)
    return theta, value, at_boundary


def callable_batch(log_likelihood):
    """Adapt a plain vectorized callable to the batch evaluate signature."""

    def evaluate(thetas, rows):
        return np.asarray(log_likelihood(wrap(np.atleast_1d(thetas))), dtype=float)

    return evaluate
