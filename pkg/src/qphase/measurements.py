"""Outcome distributions and Fisher informations of the measurement families.

Three families are covered, each reduced to the distribution it induces on
its outcomes (operator forms are never materialized):

* two-outcome projective measurements aimed at an orientation ``g``, with
  ``p(1 | theta) = (1 + sin(theta - g) sqrt(F)) / 2``;
* the optimal covariant measurement, whose outcome is an angle with density
  ``(1 + sqrt(F) cos(that - theta)) / (2 pi)``;
* the general covariant family parameterized by a direction ``d`` orthogonal
  to the rotation axis, with density
  ``(1 + (a.d) cos(that - theta) - a.(d x n) sin(that - theta)) / (2 pi)``.

Densities are per-radian values; every ``1/(2 pi)`` lives inside the density.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .bloch import TWO_PI, ProbeConfig, wrap
from .errors import InvalidDirection, QuadratureFailure, SingularFisher

DIRECTION_AXIS_TOL = 1e-10


@dataclass(frozen=True)
class TwoOutcomePovm:
    """Two-outcome measurement aimed at ``orientation`` (the free angle g)."""

    orientation: float
    probe: ProbeConfig


@dataclass(frozen=True)
class CovariantPovm:
    """Covariant measurement; ``direction=None`` selects the optimal one.

    When a direction is given it must be orthogonal to the rotation axis and
    at most unit length, otherwise the seed operator is not positive.
    """

    probe: ProbeConfig
    direction: np.ndarray | None = None

    def __post_init__(self):
        if self.direction is None:
            return
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (3,):
            raise InvalidDirection(f"direction must be a 3-vector, got {d.shape}")
        if abs(float(np.dot(d, self.probe.n))) > DIRECTION_AXIS_TOL:
            raise InvalidDirection("direction must be orthogonal to the rotation axis")
        if float(np.linalg.norm(d)) > 1.0 + 1e-12:
            raise InvalidDirection("direction must have norm at most 1")
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "direction", d)


def two_outcome_prob(povm: TwoOutcomePovm, theta, x: int):
    """Probability of outcome ``x`` (0 or 1) at true phase ``theta``.

    The two outcomes are exact complements: ``p(0) = 1 - p(1)``.
    """
    delta = np.asarray(theta, dtype=float) - povm.orientation
    p1 = 0.5 * (1.0 + np.sin(delta) * np.sqrt(povm.probe.qfi))
    if x == 1:
        return p1 if p1.ndim else float(p1)
    p0 = 1.0 - p1
    return p0 if p0.ndim else float(p0)


def two_outcome_fisher(povm: TwoOutcomePovm, theta, on_singular: str = "limit"):
    """Classical Fisher information ``F cos^2 / (1 - F sin^2)`` of the POVM.

    At unit Fisher information the expression is 0/0 when the phase sits a
    quarter turn from the orientation.  By default the limiting value 0 is
    returned there (the point has measure zero and the adjacent values are
    otherwise constant); pass ``on_singular="raise"`` to get
    :class:`SingularFisher` for direct boundary queries instead.
    """
    qfi = povm.probe.qfi
    delta = float(theta) - povm.orientation
    s = np.sin(delta)
    denom = 1.0 - qfi * s * s
    if denom <= 1e-12:
        if on_singular == "raise":
            raise SingularFisher(
                f"Fisher information is 0/0 at theta - g = {wrap(delta)!r}"
            )
        return 0.0
    c = np.cos(delta)
    return float(qfi * c * c / denom)


def covariant_density(probe: ProbeConfig, theta, that):
    """Outcome density of the optimal covariant measurement at ``that``."""
    delta = np.asarray(that, dtype=float) - np.asarray(theta, dtype=float)
    val = (1.0 + np.sqrt(probe.qfi) * np.cos(delta)) / TWO_PI
    return val if val.ndim else float(val)


def covariant_score(probe: ProbeConfig, theta, that):
    """Phase derivative of the log covariant density (analytic form)."""
    delta = np.asarray(that, dtype=float) - np.asarray(theta, dtype=float)
    r = np.sqrt(probe.qfi)
    val = r * np.sin(delta) / (1.0 + r * np.cos(delta))
    return val if val.ndim else float(val)


def covariant_fisher_closed(probe: ProbeConfig) -> float:
    """Closed-form Fisher information of the optimal covariant measurement."""
    return 1.0 - np.sqrt(1.0 - min(probe.qfi, 1.0))


def _coupling(povm: CovariantPovm):
    """Cosine/sine coupling coefficients (a.d, a.(d x n)) of the density."""
    if povm.direction is None:
        raise InvalidDirection("this covariant POVM has no direction parameter")
    a, n, d = povm.probe.a, povm.probe.n, povm.direction
    return float(np.dot(a, d)), float(np.dot(a, np.cross(d, n)))


def general_covariant_density(povm: CovariantPovm, theta, that):
    """Outcome density of the direction-``d`` covariant measurement."""
    ca, sa = _coupling(povm)
    delta = np.asarray(that, dtype=float) - np.asarray(theta, dtype=float)
    val = (1.0 + ca * np.cos(delta) - sa * np.sin(delta)) / TWO_PI
    return val if val.ndim else float(val)


def general_covariant_score(povm: CovariantPovm, theta, that):
    """Phase derivative of the log density of the direction-``d`` family."""
    ca, sa = _coupling(povm)
    delta = np.asarray(that, dtype=float) - np.asarray(theta, dtype=float)
    val = (ca * np.sin(delta) + sa * np.cos(delta)) / (
        1.0 + ca * np.cos(delta) - sa * np.sin(delta)
    )
    return val if val.ndim else float(val)


def fisher_by_quadrature(
    density,
    theta: float,
    score=None,
    fd_step: float = 1e-5,
    density_floor: float = 1e-14,
    abs_tol: float = 1e-9,
) -> float:
    """Fisher information of a circular density by adaptive quadrature.

    Integrates ``(d/dtheta log p(that | theta))^2 p(that | theta)`` over one
    full turn.  ``density(that, theta)`` must be evaluable pointwise; the
    derivative uses ``score(that, theta)`` when supplied and a central finite
    difference of step ``fd_step`` otherwise.  The integrand is set to zero
    wherever any density evaluation it needs falls below ``density_floor``
    (the omitted mass is negligible for integrable log-derivative blowups).

    Note: near a zero of the density the finite-difference route loses a few
    digits; supply the analytic ``score`` when 1e-7 accuracy matters for
    densities that touch zero.
    """

    if score is not None:

        def integrand(that):
            p = density(that, theta)
            if p < density_floor:
                return 0.0
            d = score(that, theta)
            return d * d * p

    else:

        def integrand(that):
            p = density(that, theta)
            if p < density_floor:
                return 0.0
            p_hi = density(that, theta + fd_step)
            p_lo = density(that, theta - fd_step)
            if p_hi < density_floor or p_lo < density_floor:
                return 0.0
            d = (np.log(p_hi) - np.log(p_lo)) / (2.0 * fd_step)
            return d * d * p

    result = integrate.quad(
        integrand, 0.0, TWO_PI, epsabs=abs_tol, epsrel=1e-9, limit=200, full_output=1
    )
    if len(result) > 3:
        raise QuadratureFailure(result[3])
    value, err = result[0], result[1]
    if err > max(abs_tol, 1e-6 * abs(value)):
        raise QuadratureFailure(
            f"quadrature error estimate {err!r} exceeds tolerance {abs_tol!r}"
        )
    return float(value)
