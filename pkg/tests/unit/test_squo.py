from math import cos, pi, sin, sqrt

import numpy as np
import pytest

from entgeom.metrics.entropies import linear_entropy, tangle
from entgeom.numerics.linalg import herm_eig
from entgeom.states.bipartite import bell_state, maximally_entangled_state, product_state, reduced_density
from entgeom.states.sampling import complex_gaussian, haar_random_state, make_rng
from entgeom.unitaries.squo import (
    QubitUnitaryParams,
    apply_squo,
    bloch_expectations,
    build_squo,
    distance,
    frame_tangle,
    is_separable,
    local_factorizability,
    max_factorizability,
    optimal_squo,
    orthogonal_squo,
    squared_distance,
    squo_from_eigenvector,
    squo_overlap,
)
from entgeom.utils.errors import DimMismatch, NotNormalized


def test_params_are_wrapped():
    p = QubitUnitaryParams(4.0, -pi / 2)
    assert p.theta == pi
    assert p.phi == pytest.approx(3 * pi / 2)


@pytest.mark.parametrize("seed", range(5))
def test_squo_is_hermitian_unitary_traceless(seed):
    rng = np.random.default_rng(seed)
    o = build_squo(QubitUnitaryParams(rng.uniform(0, pi), rng.uniform(0, 2 * pi)))
    np.testing.assert_allclose(o, o.conj().T)
    np.testing.assert_allclose(o @ o, np.eye(2), atol=1e-14)
    assert abs(np.trace(o)) < 1e-14


def test_product_state_is_preserved():
    psi = product_state([1, 0], [1, 0])
    minimum = optimal_squo(psi)
    assert minimum.min_d2 == pytest.approx(0.0, abs=1e-15)
    assert minimum.params1.theta == 0.0
    assert squared_distance(psi, QubitUnitaryParams(pi / 2, 0.0)) == pytest.approx(1.0)
    verdict = is_separable(psi)
    assert verdict.separable
    assert abs(squo_overlap(psi, verdict.preserving)) == pytest.approx(1.0)


def test_bell_state_is_degenerate():
    minimum = optimal_squo(bell_state())
    assert minimum.degenerate
    assert minimum.min_d2 == pytest.approx(1.0)
    verdict = is_separable(bell_state())
    assert not verdict.separable
    assert verdict.preserving is None


@pytest.mark.parametrize("seed", range(30))
def test_minimum_equals_linear_entropy_and_tangle(seed):
    psi = haar_random_state(2, 3 + seed % 4, seed)
    rho = reduced_density(psi)
    minimum = optimal_squo(psi)
    assert minimum.min_d2 == pytest.approx(linear_entropy(rho), abs=1e-12)
    assert minimum.min_d2 == pytest.approx(tangle(rho), abs=1e-12)
    assert squared_distance(psi, minimum.params1) == pytest.approx(minimum.min_d2, abs=1e-12)
    assert squared_distance(psi, minimum.params2) == pytest.approx(minimum.min_d2, abs=1e-12)
    assert max_factorizability(psi) == pytest.approx(bloch_expectations(psi).norm_squared, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_closed_form_matches_matrix_action(seed):
    psi = haar_random_state(2, 4, seed)
    rng = np.random.default_rng(100 + seed)
    p = QubitUnitaryParams(rng.uniform(0, pi), rng.uniform(0, 2 * pi))
    overlap = squo_overlap(psi, p)
    assert abs(overlap.imag) < 1e-14
    assert squared_distance(psi, p) == pytest.approx(1.0 - abs(overlap) ** 2, abs=1e-12)
    assert distance(psi, p) ** 2 == pytest.approx(squared_distance(psi, p), abs=1e-12)
    image = apply_squo(psi, p)
    assert abs(np.vdot(psi.coeffs, image.coeffs) - overlap) < 1e-12


def test_orthogonal_squo_is_negated_operator():
    p = QubitUnitaryParams(0.3, 1.1)
    np.testing.assert_allclose(build_squo(orthogonal_squo(p)), -build_squo(p), atol=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_local_factorizability(seed):
    psi = haar_random_state(2, 2, seed)
    eig = herm_eig(reduced_density(psi).rho)
    top = eig.vectors[:, 1]
    assert local_factorizability(psi, top) == pytest.approx(max_factorizability(psi), abs=1e-12)
    assert local_factorizability(psi, [1, 0]) <= max_factorizability(psi) + 1e-12
    squo = squo_from_eigenvector(top)
    np.testing.assert_allclose(build_squo(squo) @ top, top, atol=1e-12)


def test_local_factorizability_needs_unit_vector():
    with pytest.raises(NotNormalized):
        local_factorizability(bell_state(), [1, 1])


@pytest.mark.parametrize("seed", range(10))
def test_frame_tangle(seed):
    psi = haar_random_state(2, 3, seed)
    rho = reduced_density(psi)
    assert frame_tangle(psi, herm_eig(rho.rho).vectors) == pytest.approx(tangle(rho), abs=1e-12)
    assert frame_tangle(psi, np.eye(2)) >= tangle(rho) - 1e-12


def test_qutrit_states_are_rejected():
    with pytest.raises(DimMismatch):
        optimal_squo(maximally_entangled_state(3))


def test_separability_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        is_separable(bell_state(), tol=0.0)


def _unit(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


@pytest.mark.parametrize("seed", range(5))
def test_separable_tilted_product(seed):
    alpha = 0.3
    xi = complex_gaussian(make_rng(seed), 5)
    psi = product_state([cos(alpha), sin(alpha)], xi)
    verdict = is_separable(psi)
    assert verdict.separable
    assert verdict.preserving.theta == pytest.approx(2 * alpha, abs=1e-9)
    assert min(verdict.preserving.phi, 2 * pi - verdict.preserving.phi) < 1e-9
    factor = np.array([cos(alpha), sin(alpha)])
    expected = 2 * np.outer(factor, factor) - np.eye(2)
    np.testing.assert_allclose(build_squo(verdict.preserving), expected, atol=1e-9)
    np.testing.assert_allclose(apply_squo(psi, verdict.preserving).coeffs, psi.coeffs, atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_local_factorizability_complements_squared_distance(seed):
    psi = haar_random_state(2, 3, seed)
    v = _unit(complex_gaussian(make_rng(500 + seed), 2))
    expected = squared_distance(psi, squo_from_eigenvector(v))
    assert 1.0 - local_factorizability(psi, v) == pytest.approx(expected, abs=1e-12)


def test_local_factorizability_over_the_bloch_sphere():
    psi = haar_random_state(2, 4, 42)
    n_points = 10_000
    # Fibonacci lattice of directions
    z = 1.0 - (2.0 * np.arange(n_points) + 1.0) / n_points
    azimuth = np.arange(n_points) * pi * (3.0 - sqrt(5.0))
    polar = np.arccos(z)
    values = [
        local_factorizability(psi, [cos(t / 2), np.exp(1j * p) * sin(t / 2)]) for t, p in zip(polar, azimuth)
    ]
    assert max(values) <= max_factorizability(psi) + 1e-12
    assert max(values) == pytest.approx(max_factorizability(psi), abs=1e-3)


@pytest.mark.parametrize("seed", range(100))
def test_product_states_are_preserved(seed):
    rng = make_rng(seed)
    psi = product_state(complex_gaussian(rng, 2), complex_gaussian(rng, 2 + seed % 5))
    verdict = is_separable(psi)
    assert verdict.separable
    assert abs(np.vdot(psi.coeffs, apply_squo(psi, verdict.preserving).coeffs)) >= 1.0 - 1e-10


@pytest.mark.parametrize("seed", range(100))
def test_entangled_states_are_reported(seed):
    psi = haar_random_state(2, 2 + seed % 4, seed)
    minimum = optimal_squo(psi)
    if minimum.min_d2 > 1e-3:
        assert not is_separable(psi).separable


@pytest.mark.slow
def test_minimum_identities_on_a_thousand_states():
    for seed in range(1000):
        psi = haar_random_state(2, 2 + seed % 7, seed)
        rho = reduced_density(psi)
        min_d2 = optimal_squo(psi).min_d2
        assert abs(min_d2 - 4.0 * np.linalg.det(rho.rho).real) <= 1e-10
        assert abs(min_d2 - linear_entropy(rho)) <= 1e-12
