"""
XY spin-1/2 chains in a transverse field and their exact ground states.

H = -J sum_j [(1 + gamma) / 2 X_j X_{j+1} + (1 - gamma) / 2 Y_j Y_{j+1}] - h sum_j Z_j

Matrices are dense, in the little-endian site order of entgeom.states.multiqubit.
"""

import logging
from dataclasses import dataclass, replace
from functools import reduce
from typing import Dict, Tuple

import numpy as np

from entgeom.numerics.linalg import CMatrix, as_cmatrix, herm_eig, hermiticity_error
from entgeom.states.multiqubit import MAX_SITES, MIN_SITES, MultiQubitState
from entgeom.states.sampling import complex_gaussian, make_rng
from entgeom.unitaries.squo import SIGMA_X, SIGMA_Y, SIGMA_Z
from entgeom.utils.algorithms import power_iteration
from entgeom.utils.array_functions import fix_column_phases
from entgeom.utils.decorators import timer
from entgeom.utils.errors import BadDims, NoConvergence, OutOfRange, TooLarge

logger = logging.getLogger("entgeom")

RESIDUAL_TOL = 1e-8
POWER_TOL = 1e-10
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SpinChainSpec:
    """
    n_sites qubits with nearest-neighbour XY coupling of strength `coupling`, anisotropy gamma
    and transverse field `field`; `periodic` closes the chain with a bond (n - 1, 0)
    """

    n_sites: int
    gamma: float
    field: float
    coupling: float = 1.0
    periodic: bool = False

    def __post_init__(self):
        if self.n_sites > MAX_SITES:
            raise TooLarge(f"At most {MAX_SITES} sites are supported, got {self.n_sites}")
        if self.n_sites < MIN_SITES:
            raise BadDims(f"A chain needs at least {MIN_SITES} sites, got {self.n_sites}")
        if not 0.0 <= self.gamma <= 1.0:
            raise OutOfRange(f"gamma must be in [0, 1], got {self.gamma}")
        if self.field < 0.0:
            raise OutOfRange(f"field must be non-negative, got {self.field}")

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    @property
    def bonds(self) -> Tuple[Tuple[int, int], ...]:
        bonds = [(j, j + 1) for j in range(self.n_sites - 1)]
        if self.periodic and self.n_sites > 2:
            bonds.append((self.n_sites - 1, 0))
        return tuple(bonds)

    def with_field(self, field: float) -> "SpinChainSpec":
        return replace(self, field=float(field))


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    """Lowest eigenpair of a Hamiltonian and the gap to the next level (0 for a degenerate ground state)"""

    energy: float
    vector: np.ndarray
    gap: float

    @property
    def state(self) -> MultiQubitState:
        return MultiQubitState(self.vector)


def embed_operators(operators: Dict[int, CMatrix], n_sites: int) -> CMatrix:
    """Kronecker product placing operators[k] on site k and the identity elsewhere"""
    # site n_sites - 1 is the leftmost factor
    factors = [operators.get(site, IDENTITY_2) for site in reversed(range(n_sites))]
    return reduce(np.kron, factors)


def build_xy_hamiltonian(spec: SpinChainSpec) -> CMatrix:
    """Dense 2^n x 2^n Hamiltonian of the chain"""
    n = spec.n_sites
    j_x = spec.coupling * (1.0 + spec.gamma) / 2.0
    j_y = spec.coupling * (1.0 - spec.gamma) / 2.0
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    for i, j in spec.bonds:
        h -= j_x * embed_operators({i: SIGMA_X, j: SIGMA_X}, n)
        if j_y != 0.0:
            h -= j_y * embed_operators({i: SIGMA_Y, j: SIGMA_Y}, n)
    for site in range(n):
        h -= spec.field * embed_operators({site: SIGMA_Z}, n)
    logger.debug(f"Built XY hamiltonian: n={n}, gamma={spec.gamma}, h={spec.field}, bonds={len(spec.bonds)}")
    return h


def parity_sectors(dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """Basis indices of even and odd total sigma_z parity (-1)^popcount(index)"""
    indices = np.arange(dim)
    popcount = np.array([bin(i).count("1") for i in indices])
    return indices[popcount % 2 == 0], indices[popcount % 2 == 1]


def sector_ground_state(h: CMatrix, sector: np.ndarray) -> Tuple[float, np.ndarray]:
    """Lowest eigenpair of h restricted to a set of basis indices, the vector embedded back in the full space"""
    eig = herm_eig(h[np.ix_(sector, sector)])
    vector = np.zeros(h.shape[0], dtype=complex)
    vector[sector] = eig.vectors[:, 0]
    return float(eig.values[0]), vector


@timer
def _power_ground_state(h: CMatrix) -> Tuple[float, np.ndarray, float]:
    shift = float(np.linalg.norm(h, 1))
    start = complex_gaussian(make_rng(0), h.shape[0])
    top, vector = power_iteration(lambda v: shift * v - h @ v, start, tol=POWER_TOL)

    def deflated(v: np.ndarray) -> np.ndarray:
        w = shift * v - h @ v
        return w - vector * np.vdot(vector, w)

    start = start - vector * np.vdot(vector, start)
    second, _ = power_iteration(deflated, start, tol=POWER_TOL)
    return shift - top, vector, max(top - second, 0.0)


def ground_state(h, method: str = "eigh") -> GroundStateResult:
    """
    Ground state by exact diagonalization

    Parameters
    ----------
    h : array-like
        Hermitian matrix
    method : str
        "eigh" uses herm_eig, whose tie-break fixes the vector of a degenerate ground level;
        "power" runs power iteration on (c - H) with c = ||H||_1, then on its deflation for the gap
    """

    h = as_cmatrix(h)
    if h.shape[0] > 1 << MAX_SITES:
        raise TooLarge(f"Hamiltonians up to dimension {1 << MAX_SITES} are supported, got {h.shape[0]}")

    if method == "eigh":
        eig = herm_eig(h)
        energy, vector = float(eig.values[0]), eig.vectors[:, 0]
        gap = float(eig.values[1] - eig.values[0]) if eig.values.shape[0] > 1 else 0.0
    elif method == "power":
        if hermiticity_error(h) > 1e-12:
            raise ValueError("Power iteration needs a Hermitian matrix")
        energy, vector, gap = _power_ground_state(h)
        vector = fix_column_phases(vector[:, None])[:, 0]
    else:
        raise ValueError(f"Unknown ground state method: {method}")

    scale = max(float(np.linalg.norm(h, 1)), 1.0)
    residual = float(np.linalg.norm(h @ vector - energy * vector))
    if residual > RESIDUAL_TOL * scale:
        raise NoConvergence(f"Ground state residual {residual:.3e} above {RESIDUAL_TOL} * ||H||")
    return GroundStateResult(energy=energy, vector=vector, gap=max(gap, 0.0))
