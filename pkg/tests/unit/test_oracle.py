""" the numerical minimizers never beat the closed forms and get close to them """

import numpy as np
import pytest

from entgeom.oracle.minimizers import basis_scan_qubit, grid_min_squo, random_basis_min_squtuo
from entgeom.states.bipartite import bell_state, maximally_entangled_state, product_state
from entgeom.states.sampling import haar_random_state
from entgeom.unitaries.squo import optimal_squo, squared_distance
from entgeom.unitaries.squtuo import min_squared_distance_qutrit, squared_distance_qutrit
from entgeom.utils.errors import DimMismatch


@pytest.mark.parametrize("seed", range(5))
def test_grid_min_squo_default_grid(seed):
    psi = haar_random_state(2, 3, seed)
    analytic = optimal_squo(psi).min_d2
    found = grid_min_squo(psi)
    assert found.min_d2 >= analytic - 1e-12
    assert found.min_d2 - analytic <= 1e-8
    assert squared_distance(psi, found.argmin) == pytest.approx(found.min_d2, abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_grid_min_squo_coarse_grid_without_refinement(seed):
    psi = haar_random_state(2, 2, seed)
    analytic = optimal_squo(psi).min_d2
    coarse = grid_min_squo(psi, n_theta=36, n_phi=72, refine_rounds=0)
    refined = grid_min_squo(psi, n_theta=36, n_phi=72)
    assert coarse.min_d2 >= refined.min_d2 - 1e-15
    assert refined.min_d2 >= analytic - 1e-12
    assert refined.min_d2 - analytic <= 1e-6


@pytest.mark.parametrize("seed", range(3))
def test_grid_gap_shrinks_with_resolution(seed):
    psi = haar_random_state(2, 4, seed)
    analytic = optimal_squo(psi).min_d2
    coarse = grid_min_squo(psi, n_theta=360, n_phi=720, refine_rounds=0).min_d2 - analytic
    fine = grid_min_squo(psi, n_theta=720, n_phi=1440, refine_rounds=0).min_d2 - analytic
    assert fine >= -1e-12
    assert coarse >= fine - 1e-12
    refined_coarse = grid_min_squo(psi, n_theta=360, n_phi=720).min_d2 - analytic
    refined_fine = grid_min_squo(psi, n_theta=720, n_phi=1440).min_d2 - analytic
    assert refined_coarse >= refined_fine - 1e-12
    assert refined_fine <= fine + 1e-15


def test_grid_on_product_state_finds_zero():
    found = grid_min_squo(product_state([1, 0], [0, 1]))
    assert found.min_d2 == pytest.approx(0.0, abs=1e-15)


def test_grid_ties_go_to_first_point():
    found = grid_min_squo(bell_state(), n_theta=4, n_phi=4, refine_rounds=0)
    assert found.min_d2 == pytest.approx(1.0)
    assert (found.argmin.theta, found.argmin.phi) == (0.0, 0.0)


def test_grid_errors():
    with pytest.raises(DimMismatch):
        grid_min_squo(maximally_entangled_state(3))
    with pytest.raises(ValueError):
        grid_min_squo(bell_state(), n_theta=1)


@pytest.mark.parametrize("seed", range(3))
def test_random_basis_min_squtuo(seed):
    psi = haar_random_state(3, 3, seed)
    analytic = min_squared_distance_qutrit(psi).min_d2
    found = random_basis_min_squtuo(psi, samples=2000, seed=seed)
    assert found.min_d2 >= analytic - 1e-12
    assert found.min_d2 - analytic <= 5e-3
    assert squared_distance_qutrit(psi, found.argmin) == pytest.approx(found.min_d2, abs=1e-12)


def test_random_basis_is_seeded():
    psi = haar_random_state(3, 4, 9)
    first = random_basis_min_squtuo(psi, samples=500, seed=3, refine_rounds=20)
    second = random_basis_min_squtuo(psi, samples=500, seed=3, refine_rounds=20)
    assert first.min_d2 == second.min_d2
    np.testing.assert_array_equal(first.argmin.frame, second.argmin.frame)


def test_refinement_only_improves():
    psi = haar_random_state(3, 3, 4)
    raw = random_basis_min_squtuo(psi, samples=100, seed=1, refine_rounds=0)
    refined = random_basis_min_squtuo(psi, samples=100, seed=1, refine_rounds=50)
    assert refined.min_d2 <= raw.min_d2


@pytest.mark.parametrize("seed", range(3))
def test_basis_scan_qubit(seed):
    psi = haar_random_state(2, 4, seed)
    tangle = optimal_squo(psi).min_d2
    found = basis_scan_qubit(psi, samples=2000, seed=seed)
    assert found >= tangle - 1e-12
    assert found - tangle <= 5e-3


def test_sample_count_must_be_positive():
    with pytest.raises(ValueError):
        basis_scan_qubit(bell_state(), samples=0, seed=0)
    with pytest.raises(DimMismatch):
        basis_scan_qubit(maximally_entangled_state(3), samples=10, seed=0)
