import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from qphase import (
    circular_distance,
    make_probe,
    quantum_fisher_information,
    rotate_bloch,
    wrap,
)
from qphase.errors import DegenerateProbe, InvalidVector

SQ3 = np.sqrt(3.0)


def test_wrap_canonical_range():
    assert wrap(0.0) == 0.0
    assert wrap(2 * np.pi) == 0.0
    assert abs(wrap(-0.1) - (2 * np.pi - 0.1)) < 1e-15
    assert abs(wrap(7.0) - (7.0 - 2 * np.pi)) < 1e-15


@given(st.floats(-50, 50), st.floats(-50, 50))
@settings(max_examples=200, deadline=None)
def test_circular_distance_properties(x, y):
    d = circular_distance(x, y)
    assert 0.0 <= d <= np.pi + 1e-12
    assert abs(d - circular_distance(y, x)) < 1e-9
    assert abs(circular_distance(x + 2 * np.pi, y) - d) < 1e-9


def test_make_probe_max_information():
    probe = make_probe((1, 0, 0), (0, 0, 1))
    assert probe.qfi == pytest.approx(1.0, abs=1e-15)


def test_make_probe_tilted():
    probe = make_probe((SQ3 / 2, 0, 0.5), (0, 0, 1))
    assert probe.qfi == pytest.approx(0.75, abs=1e-12)


def test_make_probe_degenerate():
    with pytest.raises(DegenerateProbe):
        make_probe((0, 0, 1), (0, 0, 1))
    with pytest.raises(DegenerateProbe):
        make_probe((0, 0, 0), (0, 0, 1))


def test_make_probe_invalid_vectors():
    with pytest.raises(InvalidVector):
        make_probe((1, 0, 0), (0, 0, 2))
    with pytest.raises(InvalidVector):
        make_probe((1.5, 0, 0), (0, 0, 1))
    # within tolerance: renormalized / clamped silently
    probe = make_probe((1 + 1e-10, 0, 0), (0, 0, 1 + 1e-10))
    assert probe.qfi == pytest.approx(1.0, abs=1e-9)


def test_quantum_fisher_information_examples():
    assert quantum_fisher_information(make_probe((0, 1, 0), (0, 0, 1))) == pytest.approx(1.0)
    assert quantum_fisher_information(
        make_probe((SQ3 / 2, 0, 0.5), (0, 0, 1))
    ) == pytest.approx(0.75, abs=1e-12)
    assert quantum_fisher_information(
        make_probe((0.8, 0, 0), (0, 0, 1))
    ) == pytest.approx(0.64, abs=1e-12)


def test_rotate_identity_and_periodicity():
    probe = make_probe((0.6, 0.3, 0.2), (0, 0, 1))
    np.testing.assert_allclose(rotate_bloch(probe, 0.0), probe.a, atol=1e-15)
    np.testing.assert_allclose(
        rotate_bloch(probe, 2 * np.pi - 1e-15), probe.a, atol=1e-10
    )


def test_rotate_quarter_turn_about_z():
    probe = make_probe((1, 0, 0), (0, 0, 1))
    np.testing.assert_allclose(rotate_bloch(probe, np.pi / 2), (0, 1, 0), atol=1e-12)


@pytest.mark.parametrize(
    "a,n",
    [
        ((1, 0, 0), (0, 0, 1)),
        ((0.5, 0.5, 0.5), (0, 1, 0)),
        ((SQ3 / 2, 0, 0.5), (0, 0, 1)),
        ((0.3, -0.4, 0.5), (1 / SQ3, 1 / SQ3, 1 / SQ3)),
    ],
)
def test_rotation_against_rotation_matrix(a, n):
    probe = make_probe(a, n)
    for theta in (0.3, 1.7, 3.9, 5.5):
        oracle = Rotation.from_rotvec(theta * probe.n).apply(probe.a)
        np.testing.assert_allclose(rotate_bloch(probe, theta), oracle, atol=1e-12)


def test_rotation_preserves_norm_and_axial_component():
    probe = make_probe((0.5, 0.5, 0.5), (0, 1, 0))
    for theta in np.linspace(0, 2 * np.pi, 17):
        rotated = rotate_bloch(probe, theta)
        assert np.linalg.norm(rotated) == pytest.approx(
            np.linalg.norm(probe.a), abs=1e-10
        )
        assert np.dot(rotated, probe.n) == pytest.approx(
            np.dot(probe.a, probe.n), abs=1e-10
        )


def test_rotation_group_property():
    probe = make_probe((0.3, -0.4, 0.5), (1 / SQ3, 1 / SQ3, 1 / SQ3))
    t1, t2 = 1.1, 2.6
    once = rotate_bloch(probe, t1 + t2)
    chained = make_probe(rotate_bloch(probe, t1), probe.n)
    np.testing.assert_allclose(rotate_bloch(chained, t2), once, atol=1e-10)


def test_fisher_invariant_under_rotation():
    probe = make_probe((0.5, 0.5, 0.5), (0, 1, 0))
    for theta in (0.7, 2.9, 4.4):
        rotated = make_probe(rotate_bloch(probe, theta), probe.n)
        assert rotated.qfi == pytest.approx(probe.qfi, abs=1e-10)


def test_probe_arrays_readonly():
    probe = make_probe((1, 0, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        probe.a[0] = 0.0
