"""
Single-qubit unitary operations (SQUOs) on (2 x D) pure states.

A SQUO is O_A (x) 1_B with O_A unitary, Hermitian and traceless, i.e.
O_A(theta, phi) = cos(theta) sigma_z + sin(theta) cos(phi) sigma_x + sin(theta) sin(phi) sigma_y.
Its expectation value on a state is the projection of the Bloch vector M of rho_A on the
direction n(theta, phi), so the squared distance between a state and its image is 1 - (M.n)^2.
"""

import logging
from dataclasses import dataclass
from math import atan2, cos, pi, sin, sqrt
from typing import Optional, Sequence

import numpy as np

from entgeom.numerics.linalg import CMatrix
from entgeom.states.bipartite import BipartiteState, reduced_density
from entgeom.utils.errors import DimMismatch, NotNormalized

logger = logging.getLogger("entgeom")

DEFAULT_SEPARABILITY_TOL = 1e-10
DEGENERATE_BLOCH_NORM = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class QubitUnitaryParams:
    """Polar angle theta clamped to [0, pi] and azimuth phi wrapped to [0, 2 pi)"""

    theta: float
    phi: float

    def __post_init__(self):
        theta = min(max(float(self.theta), 0.0), pi)
        phi = float(self.phi) % (2 * pi)
        if phi >= 2 * pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def direction(self) -> np.ndarray:
        """Unit vector n with O_A = n . sigma"""
        return np.array(
            [sin(self.theta) * cos(self.phi), sin(self.theta) * sin(self.phi), cos(self.theta)], dtype=float
        )


@dataclass(frozen=True)
class BlochVector:
    mx: float
    my: float
    mz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.mx, self.my, self.mz], dtype=float)

    @property
    def norm_squared(self) -> float:
        return self.mx * self.mx + self.my * self.my + self.mz * self.mz


@dataclass(frozen=True)
class SquoMinimum:
    """
    The two extremal SQUOs (O and -O, images differing by a global pi phase) and the minimum
    squared distance. `degenerate` is set when M = 0: every SQUO is then minimal.
    """

    params1: QubitUnitaryParams
    params2: QubitUnitaryParams
    min_d2: float
    degenerate: bool = False


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    preserving: Optional[QubitUnitaryParams]
    min_d2: float


def _require_qubit(psi: BipartiteState) -> None:
    if psi.dim_a != 2:
        raise DimMismatch(f"SQUOs act on (2 x D) states, got dim_a = {psi.dim_a}")


def build_squo(p: QubitUnitaryParams) -> CMatrix:
    n = p.direction
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def apply_squo(psi: BipartiteState, p: QubitUnitaryParams) -> BipartiteState:
    _require_qubit(psi)
    return BipartiteState(build_squo(p) @ psi.coeffs)


def squo_overlap(psi: BipartiteState, p: QubitUnitaryParams) -> complex:
    """<Psi| O_A (x) 1_B |Psi> by direct matrix action"""
    _require_qubit(psi)
    return complex(np.vdot(psi.coeffs, build_squo(p) @ psi.coeffs))


def bloch_expectations(psi: BipartiteState) -> BlochVector:
    """M_alpha = <Psi| sigma_A^alpha |Psi> = Tr(rho_A sigma^alpha)"""
    _require_qubit(psi)
    rho = reduced_density(psi).rho
    m = [float(np.clip(np.trace(rho @ sigma).real, -1.0, 1.0)) for sigma in PAULIS]
    return BlochVector(*m)


def squared_distance(psi: BipartiteState, p: QubitUnitaryParams) -> float:
    """d^2 = 1 - (M_z cos(theta) + M_x sin(theta) cos(phi) + M_y sin(theta) sin(phi))^2"""
    projection = float(bloch_expectations(psi).as_array() @ p.direction)
    return min(max(1.0 - projection * projection, 0.0), 1.0)


def distance(psi: BipartiteState, p: QubitUnitaryParams) -> float:
    return sqrt(squared_distance(psi, p))


def orthogonal_squo(p: QubitUnitaryParams) -> QubitUnitaryParams:
    """(pi - theta, phi + pi): the SQUO equal to -O(theta, phi)"""
    return QubitUnitaryParams(pi - p.theta, p.phi + pi)


def _params_of_direction(m: np.ndarray) -> QubitUnitaryParams:
    return QubitUnitaryParams(atan2(sqrt(m[0] * m[0] + m[1] * m[1]), m[2]), atan2(m[1], m[0]))


def optimal_squo(psi: BipartiteState) -> SquoMinimum:
    """
    Analytic minimizer of the squared distance over all SQUOs.

    The minimum 1 - |M|^2 is reached for n parallel to +M and -M:
    phi_1 = atan2(M_y, M_x), theta_1 = atan2(sqrt(M_x^2 + M_y^2), M_z), and the orthogonal pair.
    """
    m = bloch_expectations(psi).as_array()
    norm_squared = float(m @ m)
    min_d2 = min(max(1.0 - norm_squared, 0.0), 1.0)
    if sqrt(norm_squared) <= DEGENERATE_BLOCH_NORM:
        params1 = QubitUnitaryParams(0.0, 0.0)
        return SquoMinimum(params1, orthogonal_squo(params1), min_d2, degenerate=True)
    params1 = _params_of_direction(m)
    return SquoMinimum(params1, orthogonal_squo(params1), min_d2)


def max_factorizability(psi: BipartiteState) -> float:
    """max over pure qubit states of F_A, equal to |M|^2 = 1 - min d^2"""
    return 1.0 - optimal_squo(psi).min_d2


def squo_from_eigenvector(pure_qubit: Sequence[complex]) -> QubitUnitaryParams:
    """The SQUO 2 |v><v| - 1 whose +1 eigenvector is v"""
    v = np.asarray(pure_qubit, dtype=complex)
    cross = np.conj(v[0]) * v[1]
    return _params_of_direction(np.array([2 * cross.real, 2 * cross.imag, abs(v[0]) ** 2 - abs(v[1]) ** 2]))


def local_factorizability(psi: BipartiteState, pure_qubit: Sequence[complex]) -> float:
    """F_A = (2 Tr(rho_A rho_A^p) - 1)^2 for the pure qubit state rho_A^p = |v><v|"""
    _require_qubit(psi)
    v = np.asarray(pure_qubit, dtype=complex)
    if v.shape != (2,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise NotNormalized("pure_qubit must be a unit 2-vector")
    overlap = float(np.vdot(v, reduced_density(psi).rho @ v).real)
    return min(max((2.0 * overlap - 1.0) ** 2, 0.0), 1.0)


def frame_tangle(psi: BipartiteState, frame) -> float:
    """4 rho'_11 rho'_22 with rho' = V^dagger rho_A V the reduction written in the frame V"""
    _require_qubit(psi)
    v = np.asarray(frame, dtype=complex)
    diagonal = np.einsum("ia,ij,ja->a", v.conj(), reduced_density(psi).rho, v).real
    return float(4.0 * diagonal[0] * diagonal[1])


def is_separable(psi: BipartiteState, tol: float = DEFAULT_SEPARABILITY_TOL) -> SeparabilityVerdict:
    """
    Separable iff some SQUO leaves the state invariant, i.e. iff the minimum squared distance vanishes.
    The preserving SQUO is 2 P_phi - 1 with phi the factor state of subsystem A.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    minimum = optimal_squo(psi)
    separable = minimum.min_d2 <= tol
    logger.debug(f"min d^2 = {minimum.min_d2:.3e}, separable = {separable}")
    return SeparabilityVerdict(separable, minimum.params1 if separable else None, minimum.min_d2)
