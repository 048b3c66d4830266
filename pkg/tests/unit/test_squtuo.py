from itertools import permutations

import numpy as np
import pytest

from entgeom.metrics.entropies import linear_entropy
from entgeom.states.bipartite import (
    bell_state,
    maximally_entangled_state,
    product_state,
    reduced_density,
    schmidt_state,
)
from entgeom.states.sampling import complex_gaussian, haar_random_state, haar_unitary, make_rng
from entgeom.unitaries.squtuo import (
    OMEGA,
    QutritBasis,
    apply_squtuo,
    build_squtuo,
    is_separable_qutrit,
    max_factorizability_qutrit,
    min_squared_distance_qutrit,
    overlap_qutrit,
    overlap_qutrit_direct,
    squared_distance_qutrit,
)
from entgeom.utils.errors import DimMismatch, NotUnitary


def test_squtuo_spectrum():
    u = build_squtuo(QutritBasis(haar_unitary(3, seed=1)))
    np.testing.assert_allclose(u @ u.conj().T, np.eye(3), atol=1e-13)
    np.testing.assert_allclose(np.linalg.matrix_power(u, 3), np.eye(3), atol=1e-12)
    assert np.trace(u) == pytest.approx(0.0, abs=1e-13)


def test_basis_must_be_unitary():
    with pytest.raises(NotUnitary):
        QutritBasis(np.ones((3, 3)))
    with pytest.raises(NotUnitary):
        QutritBasis(np.eye(2))


@pytest.mark.parametrize("seed", range(10))
def test_overlap_forms_agree(seed):
    psi = haar_random_state(3, 4, seed)
    basis = QutritBasis(haar_unitary(3, seed + 50))
    assert overlap_qutrit(psi, basis) == pytest.approx(overlap_qutrit_direct(psi, basis), abs=1e-12)
    image = apply_squtuo(psi, basis)
    assert np.vdot(psi.coeffs, image.coeffs) == pytest.approx(overlap_qutrit(psi, basis), abs=1e-12)
    assert squared_distance_qutrit(psi, basis) == pytest.approx(1.0 - abs(overlap_qutrit(psi, basis)) ** 2, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_minimum_equals_linear_entropy(seed):
    psi = haar_random_state(3, 3 + seed % 3, seed)
    minimum = min_squared_distance_qutrit(psi)
    assert minimum.min_d2 == pytest.approx(linear_entropy(reduced_density(psi)), abs=1e-12)
    assert squared_distance_qutrit(psi, minimum.basis) == pytest.approx(minimum.min_d2, abs=1e-12)
    assert list(minimum.eigenvalues) == sorted(minimum.eigenvalues, reverse=True)
    assert max_factorizability_qutrit(psi) == pytest.approx(1.0 - minimum.min_d2, abs=1e-15)
    for k in range(5):
        other = QutritBasis(haar_unitary(3, 1000 * seed + k))
        assert squared_distance_qutrit(psi, other) >= minimum.min_d2 - 1e-12


def test_product_state_is_separable():
    psi = product_state([0, 1, 0], [1, 1, 0])
    verdict = is_separable_qutrit(psi)
    assert verdict.separable
    image = apply_squtuo(psi, verdict.preserving_frame)
    assert abs(abs(np.vdot(psi.coeffs, image.coeffs)) - 1.0) < 1e-12
    assert np.vdot(psi.coeffs, image.coeffs) == pytest.approx(OMEGA, abs=1e-12)


def test_maximally_entangled_state():
    verdict = is_separable_qutrit(maximally_entangled_state(3))
    assert not verdict.separable
    assert verdict.preserving_frame is None
    assert verdict.min_d2 == pytest.approx(1.0)


def test_qubit_states_are_rejected():
    with pytest.raises(DimMismatch):
        min_squared_distance_qutrit(bell_state())


@pytest.mark.parametrize("seed", range(5))
def test_column_permutations_never_beat_the_minimum(seed):
    psi = haar_random_state(3, 4, seed)
    minimum = min_squared_distance_qutrit(psi)
    overlaps = set()
    for order in permutations(range(3)):
        for frame in (minimum.basis.frame, haar_unitary(3, 200 + seed)):
            basis = QutritBasis(frame[:, list(order)])
            assert squared_distance_qutrit(psi, basis) >= minimum.min_d2 - 1e-12
        permuted = QutritBasis(minimum.basis.frame[:, list(order)])
        assert squared_distance_qutrit(psi, permuted) == pytest.approx(minimum.min_d2, abs=1e-12)
        overlaps.add(np.round(overlap_qutrit(psi, permuted), 9))
    assert len(overlaps) > 1


def test_entangled_within_two_levels():
    psi = schmidt_state([0.0, np.sqrt(0.5), np.sqrt(0.5)])
    verdict = is_separable_qutrit(psi)
    assert not verdict.separable
    assert verdict.min_d2 == pytest.approx(0.75, abs=1e-12)
    assert min_squared_distance_qutrit(psi).eigenvalues == pytest.approx((0.5, 0.5, 0.0), abs=1e-12)


@pytest.mark.parametrize("seed", range(100))
def test_product_states_are_preserved(seed):
    rng = make_rng(seed)
    psi = product_state(complex_gaussian(rng, 3), complex_gaussian(rng, 2 + seed % 5))
    verdict = is_separable_qutrit(psi)
    assert verdict.separable
    assert abs(np.vdot(psi.coeffs, apply_squtuo(psi, verdict.preserving_frame).coeffs)) >= 1.0 - 1e-10


@pytest.mark.parametrize("seed", range(100))
def test_entangled_states_are_reported(seed):
    psi = haar_random_state(3, 3 + seed % 3, seed)
    minimum = min_squared_distance_qutrit(psi)
    if minimum.min_d2 > 1e-3:
        assert not is_separable_qutrit(psi).separable


@pytest.mark.slow
def test_minimum_identity_on_a_thousand_states():
    for seed in range(1000):
        psi = haar_random_state(3, 2 + seed % 7, seed)
        gammas = np.linalg.eigvalsh(reduced_density(psi).rho)
        assert abs(min_squared_distance_qutrit(psi).min_d2 - 1.5 * (1.0 - np.sum(gammas ** 2))) <= 1e-10
