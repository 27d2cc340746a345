from __future__ import annotations

import numpy as np
import pytest

from fefaudit.errors import DimensionError, ParameterError, PhysicalityError
from fefaudit.states import (
    horodecki_state,
    isotropic_state,
    isotropic_window,
    max_entangled_projector,
    max_entangled_vector,
    random_density_state,
    state_from_matrix,
    swap_operator,
    validate_density,
    werner_state,
)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_max_entangled_vector_and_projector(d):
    v = max_entangled_vector(d)
    assert abs(np.linalg.norm(v) - 1.0) < 1e-14
    P = max_entangled_projector(d)
    np.testing.assert_allclose(P.matrix @ P.matrix, P.matrix, atol=1e-14)  # projector
    assert abs(np.trace(P.matrix) - 1.0) < 1e-14
    # entries: 1/d exactly on the (ii),(jj) grid
    assert abs(P.matrix[0, 0] - 1.0 / d) < 1e-15
    assert abs(P.matrix[0, (d - 1) * d + (d - 1)] - 1.0 / d) < 1e-15


def test_isotropic_window_and_spectrum():
    lo, hi = isotropic_window(3)
    assert lo == pytest.approx(-1.0 / 8.0)
    assert hi == 1.0
    rho = isotropic_state(3, 0.4)
    vals = np.linalg.eigvalsh(rho.matrix)
    base = (1 - 0.4) / 9
    np.testing.assert_allclose(sorted(vals)[:-1], [base] * 8, atol=1e-14)
    assert vals.max() == pytest.approx(base + 0.4)
    # boundary stays physical
    edge = isotropic_state(3, lo)
    assert np.linalg.eigvalsh(edge.matrix).min() >= -1e-12


def test_isotropic_rejects_outside_window():
    with pytest.raises(ParameterError):
        isotropic_state(2, 1.0001)
    with pytest.raises(ParameterError):
        isotropic_state(2, -0.34)


def test_swap_operator():
    d = 3
    P = swap_operator(d)
    np.testing.assert_allclose(P @ P, np.eye(d * d), atol=0)
    v = np.zeros(d * d)
    v[0 * d + 2] = 1.0  # |02>
    w = P @ v
    assert w[2 * d + 0] == 1.0  # |20>


def test_werner_swap_variant_is_physical():
    for d in (2, 3, 4):
        w = werner_state(d, variant="swap")
        assert w.validation.physical
        vals = np.linalg.eigvalsh(w.matrix)
        lo, hi = 1.0 / d**3, (2.0 * d + 1.0) / d**3
        for v in vals:
            assert min(abs(v - lo), abs(v - hi)) < 1e-14
        assert abs(np.trace(w.matrix) - 1.0) < 1e-13


def test_werner_paper_variant_is_not_physical():
    for d in (2, 3):
        w = werner_state(d, variant="paper")
        assert not w.validation.physical
        expected_min = (d + 1.0 - d * d) / d**3
        assert w.validation.min_eigenvalue == pytest.approx(expected_min, abs=1e-12)
        assert abs(np.trace(w.matrix) - 1.0) < 1e-13
    with pytest.raises(ParameterError):
        werner_state(2, variant="other")


def test_horodecki_matrix_layout():
    a = 0.3
    rho = horodecki_state(a)
    M = rho.matrix * (8 * a + 1)
    for k in (0, 1, 2, 3, 4, 5, 7):
        assert M[k, k] == pytest.approx(a)
    for r, c in [(0, 4), (0, 8), (4, 0), (4, 8), (8, 0), (8, 4)]:
        assert M[r, c] == pytest.approx(a)
    assert M[6, 6] == pytest.approx((1 + a) / 2)
    assert M[8, 8] == pytest.approx((1 + a) / 2)
    assert M[6, 8] == pytest.approx(np.sqrt(1 - a * a) / 2)
    assert abs(np.trace(rho.matrix) - 1.0) < 1e-14
    assert np.linalg.eigvalsh(rho.matrix).min() >= -1e-12


@pytest.mark.parametrize("a", [0.0, 0.25, 0.5, 1.0])
def test_horodecki_frobenius_closed_form(a):
    rho = horodecki_state(a)
    want = np.sqrt(13 * a * a + a + 1) / (8 * a + 1)
    assert np.linalg.norm(rho.matrix) == pytest.approx(want, abs=1e-13)


def test_horodecki_a0_is_pure():
    rho = horodecki_state(0.0)
    np.testing.assert_allclose(rho.matrix @ rho.matrix, rho.matrix, atol=1e-14)
    # the ray is (|20> + |22>)/sqrt(2)
    v = np.zeros(9)
    v[2 * 3 + 0] = v[2 * 3 + 2] = 1 / np.sqrt(2)
    np.testing.assert_allclose(rho.matrix @ v, v, atol=1e-14)


def test_horodecki_rejects_out_of_range():
    with pytest.raises(ParameterError):
        horodecki_state(-0.01)
    with pytest.raises(ParameterError):
        horodecki_state(1.01)


def test_random_density_state_reproducible_and_physical():
    r1 = random_density_state(3, 7)
    r2 = random_density_state(3, 7)
    np.testing.assert_array_equal(r1.matrix, r2.matrix)
    assert r1.validation.physical
    assert abs(np.trace(r1.matrix) - 1.0) < 1e-13
    assert np.linalg.eigvalsh(r1.matrix).min() >= -1e-12
    assert not np.array_equal(r1.matrix, random_density_state(3, 8).matrix)


def test_validate_density_reports_without_raising():
    rec = validate_density(2.0 * np.eye(4))  # trace 8, clearly unphysical
    assert not rec.physical
    assert rec.trace == pytest.approx(8.0)
    rec = validate_density(np.eye(4) / 4.0)
    assert rec.physical
    assert rec.hermiticity_residual == 0.0
    assert rec.min_eigenvalue == pytest.approx(0.25)


def test_state_from_matrix_dimension_checks():
    with pytest.raises(DimensionError):
        state_from_matrix(np.eye(5) / 5.0)  # 5 is not d^2
    with pytest.raises(DimensionError):
        state_from_matrix(np.zeros((4, 5)))
    with pytest.raises(DimensionError):
        state_from_matrix(np.eye(1))


def test_state_from_matrix_enforcement_toggle():
    M = np.diag([0.75, 0.75, -0.25, -0.25])
    with pytest.raises(PhysicalityError):
        state_from_matrix(M)
    st = state_from_matrix(M, enforce=False)
    assert not st.validation.physical
    assert st.validation.min_eigenvalue == pytest.approx(-0.25)


def test_state_matrix_is_readonly():
    st = max_entangled_projector(2)
    with pytest.raises(ValueError):
        st.matrix[0, 0] = 9.0
