"""
Seeded sampling of Haar-random pure states and unitaries.

Every sampler takes an explicit seed. Generators are numpy PCG64 bit generators seeded through a
SeedSequence built from the seed reduced modulo 2**64. Independent tasks derive their own seed as
`seed XOR task_index`, so results never depend on the order in which tasks run.
"""

from math import sqrt

import numpy as np

from entgeom.states.bipartite import SUBSYSTEM_A_DIMS, BipartiteState
from entgeom.utils.errors import BadDims

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & SEED_MASK)))


def derive_seed(seed: int, task_index: int) -> int:
    return (int(seed) ^ int(task_index)) & SEED_MASK


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent standard complex Gaussians (real parts drawn first, then imaginary parts)"""
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return real + 1j * imag


def haar_random_state(dim_a: int, dim_b: int, seed: int) -> BipartiteState:
    """Unit vector of independent complex Gaussian amplitudes, i.e. Haar distributed on the sphere"""
    if dim_a not in SUBSYSTEM_A_DIMS or dim_b < 2:
        raise BadDims(f"Unsupported dimensions ({dim_a} x {dim_b})")
    coeffs = complex_gaussian(make_rng(seed), (dim_a, dim_b))
    return BipartiteState(coeffs / np.linalg.norm(coeffs))


def haar_unitaries(dim: int, count: int, seed: int) -> np.ndarray:
    """
    Stack of `count` Haar-random dim x dim unitaries, shape (count, dim, dim)

    Ginibre matrices are QR-decomposed and the columns of Q rescaled by the phases of diag(R),
    which makes the distribution exactly Haar.
    """
    if dim < 1 or count < 0:
        raise BadDims(f"Cannot sample {count} unitaries of dimension {dim}")
    ginibre = complex_gaussian(make_rng(seed), (count, dim, dim)) / sqrt(2.0)
    q, r = np.linalg.qr(ginibre)
    diagonal = np.diagonal(r, axis1=-2, axis2=-1)
    phases = diagonal / np.abs(diagonal)
    return q * phases[..., np.newaxis, :]


def haar_unitary(dim: int, seed: int) -> np.ndarray:
    if dim not in SUBSYSTEM_A_DIMS:
        raise BadDims(f"haar_unitary supports dimensions 2 and 3, got {dim}")
    return haar_unitaries(dim, 1, seed)[0]
