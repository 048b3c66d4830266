"""
Brute-force minimizers used to validate the closed-form minima of the squared distance.

grid_min_squo scans the (theta, phi) sphere of SQUOs, random_basis_min_squtuo and basis_scan_qubit
sample Haar-random frames. Every returned value is an actual evaluation of the objective at a
returned point, so oracle minima can never undercut the analytic ones beyond rounding.
"""

import logging
from dataclasses import dataclass
from math import cos, pi, sin
from typing import Callable, Tuple

import numpy as np

from entgeom.numerics.linalg import CMatrix
from entgeom.states.bipartite import BipartiteState, reduced_density
from entgeom.states.sampling import complex_gaussian, derive_seed, haar_unitaries, haar_unitary, make_rng
from entgeom.unitaries.squo import QubitUnitaryParams, bloch_expectations
from entgeom.unitaries.squtuo import QutritBasis
from entgeom.utils.algorithms import coordinate_golden_search
from entgeom.utils.array_functions import chunk_ranges
from entgeom.utils.errors import DimMismatch

logger = logging.getLogger("entgeom")

DEFAULT_GRID = (720, 1440)
GOLDEN_ROUNDS = 20
SAMPLE_CHUNK = 4096
REFINE_ROUNDS = 200
REFINE_BATCH = 16
REFINE_START_STEP = 0.5
REFINE_SHRINK = 0.7

FrameObjective = Callable[[np.ndarray], np.ndarray]

__all__ = [
    "GridMinimum",
    "FrameMinimum",
    "grid_min_squo",
    "random_basis_min_squtuo",
    "basis_scan_qubit",
    "haar_unitary",
]


@dataclass(frozen=True)
class GridMinimum:
    min_d2: float
    argmin: QubitUnitaryParams


@dataclass(frozen=True)
class FrameMinimum:
    min_d2: float
    argmin: QutritBasis


def _require_dim_a(psi: BipartiteState, dim_a: int) -> None:
    if psi.dim_a != dim_a:
        raise DimMismatch(f"Expected a ({dim_a} x D) state, got dim_a = {psi.dim_a}")


def grid_min_squo(
    psi: BipartiteState,
    n_theta: int = DEFAULT_GRID[0],
    n_phi: int = DEFAULT_GRID[1],
    refine_rounds: int = GOLDEN_ROUNDS,
) -> GridMinimum:
    """
    Minimum of the SQUO squared distance on a (theta, phi) grid, refined by golden-section search

    Parameters
    ----------
    psi : BipartiteState
        (2 x D) state
    n_theta : int
        number of theta steps, theta_i = i pi / n_theta for i = 0..n_theta
    n_phi : int
        number of phi steps, phi_j = 2 pi j / n_phi for j = 0..n_phi - 1
    refine_rounds : int
        rounds of alternate golden-section searches around the grid argmin, each one grid step wide

    Returns
    -------
    GridMinimum
        ties on the grid go to the smallest theta, then the smallest phi
    """

    _require_dim_a(psi, 2)
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"Grid must be at least 2 x 2, got {n_theta} x {n_phi}")

    mx, my, mz = bloch_expectations(psi).as_array()
    thetas = np.arange(n_theta + 1) * (pi / n_theta)
    phis = np.arange(n_phi) * (2 * pi / n_phi)
    equatorial = mx * np.cos(phis) + my * np.sin(phis)
    projection = np.cos(thetas)[:, None] * mz + np.sin(thetas)[:, None] * equatorial[None, :]
    d2 = 1.0 - projection * projection

    flat = int(np.argmin(d2))
    i, j = divmod(flat, n_phi)

    def objective(theta: float, phi: float) -> float:
        p = mz * cos(theta) + sin(theta) * (mx * cos(phi) + my * sin(phi))
        return 1.0 - p * p

    theta, phi, best = coordinate_golden_search(
        objective,
        float(thetas[i]),
        float(phis[j]),
        pi / n_theta,
        2 * pi / n_phi,
        (0.0, pi),
        rounds=refine_rounds,
    )
    logger.debug(f"grid {n_theta}x{n_phi}: grid min {d2[i, j]:.6e}, refined {best:.6e}")
    return GridMinimum(min_d2=min(max(best, 0.0), 1.0), argmin=QubitUnitaryParams(theta, phi))


def _frame_diagonals(rho: CMatrix, frames: np.ndarray) -> np.ndarray:
    """Diagonals of V^dagger rho V for a stack of frames V, shape (count, dim)"""
    return np.einsum("kia,ij,kja->ka", frames.conj(), rho, frames).real


def _qutrit_objective(rho: CMatrix) -> FrameObjective:
    def objective(frames: np.ndarray) -> np.ndarray:
        diagonals = _frame_diagonals(rho, frames)
        return np.clip(1.5 * (1.0 - np.sum(diagonals * diagonals, axis=1)), 0.0, 1.0)

    return objective


def _qubit_objective(rho: CMatrix) -> FrameObjective:
    def objective(frames: np.ndarray) -> np.ndarray:
        diagonals = _frame_diagonals(rho, frames)
        return np.clip(4.0 * diagonals[:, 0] * diagonals[:, 1], 0.0, 1.0)

    return objective


def _sample_frames(objective: FrameObjective, dim: int, samples: int, seed: int) -> Tuple[float, np.ndarray]:
    """Best of `samples` Haar frames, drawn in chunks seeded by seed XOR chunk_index"""
    best_value, best_frame = np.inf, None
    for chunk_index, start, end in chunk_ranges(samples, SAMPLE_CHUNK):
        frames = haar_unitaries(dim, end - start, derive_seed(seed, chunk_index))
        values = objective(frames)
        k = int(np.argmin(values))
        if values[k] < best_value:
            best_value, best_frame = float(values[k]), frames[k]
    return best_value, best_frame


def _refine_frame(
    objective: FrameObjective, frame: np.ndarray, value: float, rounds: int, seed: int
) -> Tuple[float, np.ndarray]:
    """
    Seeded stochastic descent on the unitary group

    Each round tries REFINE_BATCH moves V (1 - iK)^-1 (1 + iK) with K a random Hermitian matrix of
    scale eps, keeps the best one if it improves the objective and shrinks eps otherwise.
    """

    dim = frame.shape[0]
    rng = make_rng(seed)
    identity = np.eye(dim, dtype=complex)
    step = REFINE_START_STEP
    for _ in range(rounds):
        g = complex_gaussian(rng, (REFINE_BATCH, dim, dim))
        k = step * (g + np.conj(np.swapaxes(g, -1, -2))) / 2.0
        cayley = np.linalg.solve(identity - 1j * k, identity + 1j * k)
        candidates = frame @ cayley
        values = objective(candidates)
        best = int(np.argmin(values))
        if values[best] < value:
            value, frame = float(values[best]), candidates[best]
        else:
            step *= REFINE_SHRINK
    return value, frame


def _scan_frames(
    objective: FrameObjective, dim: int, samples: int, seed: int, refine_rounds: int
) -> Tuple[float, np.ndarray]:
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    value, frame = _sample_frames(objective, dim, samples, seed)
    sampled = value
    if refine_rounds > 0:
        n_chunks = -(-samples // SAMPLE_CHUNK)
        value, frame = _refine_frame(objective, frame, value, refine_rounds, derive_seed(seed, n_chunks))
    logger.debug(f"{samples} Haar frames: sampled min {sampled:.6e}, refined {value:.6e}")
    return value, frame


def random_basis_min_squtuo(
    psi: BipartiteState, samples: int, seed: int, refine_rounds: int = REFINE_ROUNDS
) -> FrameMinimum:
    """
    Minimum of the SQUTUO squared distance over Haar-random qutrit frames

    The best of `samples` frames is then refined by `refine_rounds` rounds of local descent
    (0 keeps the raw sampled minimum). Ties between samples go to the lowest sample index.
    """
    _require_dim_a(psi, 3)
    value, frame = _scan_frames(_qutrit_objective(reduced_density(psi).rho), 3, samples, seed, refine_rounds)
    return FrameMinimum(min_d2=value, argmin=QutritBasis(frame))


def basis_scan_qubit(psi: BipartiteState, samples: int, seed: int, refine_rounds: int = REFINE_ROUNDS) -> float:
    """min over Haar-random qubit frames of 4 rho'_11 rho'_22, never below the tangle 4 gamma_1 gamma_2"""
    _require_dim_a(psi, 2)
    value, _ = _scan_frames(_qubit_objective(reduced_density(psi).rho), 2, samples, seed, refine_rounds)
    return value
