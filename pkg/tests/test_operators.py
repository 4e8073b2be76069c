import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from covkit import (OperatorMatrix, Su11Element, UnitaryOrbit, compose,
                    mobius_apply, numerical_range_hull, numrange_transform,
                    read_matrix_json, read_vector_json, spectral_radius,
                    support_function, write_matrix_json, write_vector_json)

NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def su11(beta: complex, phase: float) -> Su11Element:
    alpha = cmath.exp(1j * phase) * math.sqrt(1.0 + abs(beta) ** 2)
    return Su11Element(alpha, beta)


su11_els = st.builds(
    su11,
    st.complex_numbers(max_magnitude=2.0, allow_infinity=False,
                       allow_nan=False),
    st.floats(-math.pi, math.pi))


@st.composite
def contractions(draw, n=2):
    entries = st.floats(-1.0, 1.0)
    raw = np.array([[draw(entries) + 1j * draw(entries) for _ in range(n)]
                    for _ in range(n)])
    norm = np.linalg.norm(raw, 2)
    scale = draw(st.floats(0.05, 0.9))
    return raw * (scale / norm) if norm > 0 else raw


def test_operator_matrix_validation():
    m = OperatorMatrix([[1.0, 2.0], [3.0, 4.0]])
    assert m.n == 2
    with pytest.raises(ValueError):
        OperatorMatrix([[1.0, 2.0]])
    with pytest.raises(ValueError):
        OperatorMatrix(np.zeros((0, 0)))


def test_spectral_radius_examples():
    assert spectral_radius(np.zeros((3, 3))) == 0.0
    assert spectral_radius(np.diag([0.5, -0.25])) == pytest.approx(0.5)
    assert spectral_radius(NILPOTENT) == pytest.approx(0.0, abs=1e-12)


def test_identity_motion_fixes_the_operator():
    a = np.array([[0.1, 0.3j], [-0.2, 0.4]], dtype=complex)
    out = mobius_apply(Su11Element.identity(), a)
    assert np.allclose(out, a, atol=1e-14)


def test_zero_operator_moves_to_a_scalar():
    g = su11(4.0 / 3.0, 0.0)
    out = mobius_apply(g, np.zeros((2, 2), dtype=complex))
    assert np.allclose(out, 0.8 * np.eye(2), atol=1e-12)
    assert spectral_radius(out) == pytest.approx(0.8)


@given(g1=su11_els, g2=su11_els, a=contractions())
def test_mobius_action_composes(g1, g2, a):
    two_steps = mobius_apply(g1, mobius_apply(g2, a))
    one_step = mobius_apply(compose(g1, g2), a)
    assert np.max(np.abs(two_steps - one_step)) < 1e-10


@given(g=su11_els, a=contractions())
def test_mobius_action_preserves_contractivity(g, a):
    assert spectral_radius(mobius_apply(g, a)) < 1.0 + 1e-10


def test_mobius_rejects_bad_inputs():
    g = su11(0.5, 0.0)
    with pytest.raises(ValueError, match="contraction"):
        mobius_apply(g, np.diag([1.2, 0.3]))
    with pytest.raises(ValueError, match="square"):
        mobius_apply(g, np.zeros((2, 3)))


# ---------------------------------------------------------------------------
# Numerical range


def test_orbit_validation():
    herm = np.array([[1.0, 0.5], [0.5, -1.0]], dtype=complex)
    e1 = np.array([1.0, 0.0], dtype=complex)
    ts = np.linspace(0.0, 1.0, 5)
    UnitaryOrbit(herm, e1, ts)
    with pytest.raises(ValueError, match="Hermitian"):
        UnitaryOrbit(NILPOTENT, e1, ts)
    with pytest.raises(ValueError, match="length"):
        UnitaryOrbit(herm, np.array([1.0, 0.0, 0.0]), ts)
    with pytest.raises(ValueError, match="unit"):
        UnitaryOrbit(herm, 2.0 * e1, ts)
    with pytest.raises(ValueError, match="nonempty"):
        UnitaryOrbit(herm, e1, np.array([]))


def test_orbit_starts_at_the_plain_quadratic_form():
    herm = np.array([[1.0, 0.5], [0.5, -1.0]], dtype=complex)
    orbit = UnitaryOrbit(herm, np.array([1.0, 0.0]), np.array([0.0]))
    vals = numrange_transform(np.diag([0.0, 1.0]).astype(complex), orbit)
    assert vals[0] == pytest.approx(0.0, abs=1e-12)


def test_identity_operator_reads_one_everywhere():
    herm = np.array([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, -0.5]])
    orbit = UnitaryOrbit(herm, np.array([0.6, 0.8]), np.linspace(0, 4, 21))
    vals = numrange_transform(np.eye(2, dtype=complex), orbit)
    assert np.max(np.abs(vals - 1.0)) < 1e-12


def test_orbit_values_stay_inside_the_range():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    herm = rng.normal(size=(3, 3))
    herm = herm + herm.T
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    x /= np.linalg.norm(x)
    ts = np.linspace(0.0, 6.0, 64)
    vals = numrange_transform(a, UnitaryOrbit(herm, x, ts))
    thetas = np.linspace(0.0, 2.0 * math.pi, 720, endpoint=False)
    for z in vals:
        margins = [z.real * math.cos(t) + z.imag * math.sin(t)
                   - support_function(a, t) for t in thetas]
        assert max(margins) <= 1e-9


def test_orbit_values_move_at_bounded_speed():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    herm = rng.normal(size=(3, 3))
    herm = herm + herm.T
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    x /= np.linalg.norm(x)
    ts = np.linspace(0.0, 2.0, 81)
    vals = numrange_transform(a, UnitaryOrbit(herm, x, ts))
    lip = 2.0 * np.linalg.norm(a, 2) * np.linalg.norm(herm, 2)
    steps = np.abs(np.diff(vals)) / np.diff(ts)
    assert np.max(steps) <= lip + 1e-9


def test_orbit_dimension_mismatch():
    herm = np.eye(2)
    orbit = UnitaryOrbit(herm, np.array([1.0, 0.0]), np.array([0.0]))
    with pytest.raises(ValueError, match="dimensions"):
        numrange_transform(np.zeros((3, 3)), orbit)


def test_hull_of_a_diagonal_matrix_is_its_segment():
    pts = numerical_range_hull(np.diag([0.0, 1.0]).astype(complex))
    assert np.max(np.abs(pts.imag)) < 1e-9
    assert np.min(pts.real) == pytest.approx(0.0, abs=1e-9)
    assert np.max(pts.real) == pytest.approx(1.0, abs=1e-9)


def test_hull_of_the_identity_is_a_point():
    pts = numerical_range_hull(np.eye(3, dtype=complex))
    assert np.max(np.abs(pts - 1.0)) < 1e-9


def test_hull_of_the_shift_block_is_a_half_disc_boundary():
    pts = numerical_range_hull(NILPOTENT)
    assert np.max(np.abs(np.abs(pts) - 0.5)) < 1e-9
    # counterclockwise orientation shows up as positive shoelace area
    area = 0.5 * float(np.sum(
        pts.real * np.roll(pts.imag, -1) - np.roll(pts.real, -1) * pts.imag))
    assert area == pytest.approx(math.pi / 4.0, rel=1e-3)


# ---------------------------------------------------------------------------
# JSON files


def test_matrix_json_round_trip(tmp_path):
    a = np.array([[0.5, 1.0 - 2.0j], [0.25j, -1.5]], dtype=complex)
    path = tmp_path / "m.json"
    write_matrix_json(path, a)
    assert np.array_equal(read_matrix_json(path), a)


def test_vector_json_round_trip(tmp_path):
    x = np.array([1.0, -0.5j, 0.25 + 0.125j], dtype=complex)
    path = tmp_path / "v.json"
    write_vector_json(path, x)
    assert np.array_equal(read_vector_json(path), x)


@pytest.mark.parametrize("blob,reader", [
    ('{"other": 1}', read_matrix_json),
    ('{"matrix": [[[0, 0], [1]], [[0, 0], [0, 0]]]}', read_matrix_json),
    ('{"matrix": [[[0, 0]], [[0, 0], [0, 0]]]}', read_matrix_json),
    ('{"other": 1}', read_vector_json),
    ('{"vector": [[0]]}', read_vector_json),
    ('{"vector": []}', read_vector_json),
])
def test_malformed_json_is_rejected(tmp_path, blob, reader):
    path = tmp_path / "bad.json"
    path.write_text(blob)
    with pytest.raises(ValueError):
        reader(path)
