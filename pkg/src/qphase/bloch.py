"""Bloch-sphere geometry of the probe qubit.

A probe is a qubit state with Bloch vector ``a`` rotated about a unit axis
``n`` by the unknown phase.  The quantum Fisher information of the rotated
family is ``|a|^2 - (a.n)^2`` and is constant in the phase, so it is computed
once at construction time.

Angles are plain floats.  Every angle produced by this package is reduced to
the canonical interval ``[0, 2*pi)`` with :func:`wrap`, and distances between
angles are measured with :func:`circular_distance`.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProbe, InvalidVector

TWO_PI = 2.0 * np.pi

# Unit-norm validation tolerance; config files carry decimal-truncated vectors,
# so vectors within this band are silently renormalized / clamped.
NORM_TOL = 1e-9
QFI_FLOOR = 1e-12


def wrap(theta):
    """Reduce an angle (scalar or array) to the canonical range [0, 2*pi)."""
    return np.mod(theta, TWO_PI)


def circular_distance(x, y):
    """Shortest arc length between two angles: min(|d|, 2*pi - |d|)."""
    d = np.mod(np.asarray(x) - np.asarray(y), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def _as_vec3(v, name):
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise InvalidVector(f"{name} must be a real 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidVector(f"{name} has non-finite entries: {arr}")
    return arr


@dataclass(frozen=True)
class ProbeConfig:
    """Validated probe: Bloch vector, rotation axis and cached Fisher info.

    Instances are immutable (arrays are marked read-only) and safe to share
    between workers.  Use :func:`make_probe` instead of constructing directly.
    """

    a: np.ndarray
    n: np.ndarray
    qfi: float = field(default=0.0)

    def __post_init__(self):
        self.a.setflags(write=False)
        self.n.setflags(write=False)


def make_probe(a, n) -> ProbeConfig:
    """Validate (a, n) and build a :class:`ProbeConfig`.

    The axis is renormalized when its norm is within ``1e-9`` of one; the
    Bloch vector is clamped to unit length when marginally outside the ball.

    Raises
    ------
    InvalidVector
        If ``|n|`` deviates from 1 beyond tolerance or ``|a| > 1`` beyond
        tolerance.
    DegenerateProbe
        If the quantum Fisher information would be <= 1e-12 (``a`` parallel
        to ``n`` or ``a = 0``): such probes acquire no phase dependence.
    """
    a = _as_vec3(a, "a")
    n = _as_vec3(n, "n")

    n_norm = float(np.linalg.norm(n))
    if abs(n_norm - 1.0) > NORM_TOL:
        raise InvalidVector(f"rotation axis must be unit length, |n| = {n_norm!r}")
    n = n / n_norm

    a_norm = float(np.linalg.norm(a))
    if a_norm > 1.0 + NORM_TOL:
        raise InvalidVector(f"Bloch vector lies outside the unit ball, |a| = {a_norm!r}")
    if a_norm > 1.0:
        a = a / a_norm

    qfi = float(np.dot(a, a) - np.dot(a, n) ** 2)
    if qfi <= QFI_FLOOR:
        raise DegenerateProbe(
            f"probe carries no phase information (F = {qfi!r}); "
            "a must not be parallel to n or zero"
        )
    return ProbeConfig(a=a.copy(), n=n.copy(), qfi=qfi)


def rotate_bloch(probe: ProbeConfig, theta: float) -> np.ndarray:
    """Bloch vector after rotating the probe by ``theta`` about its axis.

    Rodrigues form: ``cos(t) a + sin(t) (n x a) + 2 (n.a) sin^2(t/2) n``.
    Preserves the norm of ``a`` and its component along ``n``.
    """
    a, n = probe.a, probe.n
    return (
        np.cos(theta) * a
        + np.sin(theta) * np.cross(n, a)
        + 2.0 * np.dot(n, a) * np.sin(theta / 2.0) ** 2 * n
    )


def quantum_fisher_information(probe: ProbeConfig) -> float:
    """Quantum Fisher information of the probe (constant in the phase)."""
    return probe.qfi
