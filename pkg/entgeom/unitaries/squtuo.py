"""
Single-qutrit unitary operations (SQUTUOs) on (3 x D) pure states.

The local operator has the fixed form U = V diag(w, 1, conj(w)) V^dagger with w = exp(i 2 pi / 3),
i.e. exp(i 2 pi / 3 O_A) for O_A = V diag(1, 0, -1) V^dagger, and only the orthonormal frame V varies.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from entgeom.numerics.linalg import CMatrix, herm_eig, is_unitary
from entgeom.states.bipartite import BipartiteState, reduced_density
from entgeom.unitaries.squo import DEFAULT_SEPARABILITY_TOL
from entgeom.utils.errors import DimMismatch, NotUnitary

logger = logging.getLogger("entgeom")

OMEGA = np.exp(2j * np.pi / 3)
SQUTUO_SPECTRUM = np.array([OMEGA, 1.0, np.conj(OMEGA)], dtype=complex)


@dataclass(frozen=True, eq=False)
class QutritBasis:
    """Unitary 3x3 frame whose columns are the eigenvectors |+>, |0>, |-> of O_A (eigenvalues 1, 0, -1)"""

    frame: CMatrix

    def __post_init__(self):
        frame = np.array(self.frame, dtype=complex)
        if frame.shape != (3, 3) or not is_unitary(frame, tol=1e-10):
            raise NotUnitary("A qutrit frame must be a 3x3 unitary matrix")
        frame.flags.writeable = False
        object.__setattr__(self, "frame", frame)

    @classmethod
    def identity(cls) -> "QutritBasis":
        return cls(np.eye(3))


@dataclass(frozen=True)
class SqutuoMinimum:
    basis: QutritBasis
    min_d2: float
    eigenvalues: tuple


@dataclass(frozen=True)
class QutritSeparabilityVerdict:
    separable: bool
    preserving_frame: Optional[QutritBasis]
    min_d2: float


def _require_qutrit(psi: BipartiteState) -> None:
    if psi.dim_a != 3:
        raise DimMismatch(f"SQUTUOs act on (3 x D) states, got dim_a = {psi.dim_a}")


def build_squtuo(basis: QutritBasis) -> CMatrix:
    v = basis.frame
    return (v * SQUTUO_SPECTRUM) @ v.conj().T


def apply_squtuo(psi: BipartiteState, basis: QutritBasis) -> BipartiteState:
    _require_qutrit(psi)
    return BipartiteState(build_squtuo(basis) @ psi.coeffs)


def frame_diagonal(psi: BipartiteState, basis: QutritBasis) -> np.ndarray:
    """Diagonal elements rho'_ii of rho_A written in the frame"""
    _require_qutrit(psi)
    v = basis.frame
    return np.einsum("ia,ij,ja->a", v.conj(), reduced_density(psi).rho, v).real


def overlap_qutrit(psi: BipartiteState, basis: QutritBasis) -> complex:
    """<Psi|U (x) 1|Psi> = w rho'_11 + rho'_22 + conj(w) rho'_33"""
    return complex(SQUTUO_SPECTRUM @ frame_diagonal(psi, basis))


def overlap_qutrit_direct(psi: BipartiteState, basis: QutritBasis) -> complex:
    _require_qutrit(psi)
    return complex(np.vdot(psi.coeffs, build_squtuo(basis) @ psi.coeffs))


def _closed_form_distance(diagonal: np.ndarray) -> float:
    return min(max(1.5 * (1.0 - float(np.sum(diagonal * diagonal))), 0.0), 1.0)


def squared_distance_qutrit(psi: BipartiteState, basis: QutritBasis) -> float:
    """d^2 = (3/2) [1 - (rho'_11^2 + rho'_22^2 + rho'_33^2)]"""
    return _closed_form_distance(frame_diagonal(psi, basis))


def min_squared_distance_qutrit(psi: BipartiteState) -> SqutuoMinimum:
    """
    Minimum over all frames, reached in the eigenbasis of rho_A since the sum of squared diagonal
    elements is maximal there. Columns are ordered by descending eigenvalue.
    """
    _require_qutrit(psi)
    eig = herm_eig(reduced_density(psi).rho)
    order = np.argsort(-eig.values, kind="stable")
    gammas = np.clip(eig.values[order], 0.0, 1.0)
    return SqutuoMinimum(
        basis=QutritBasis(eig.vectors[:, order]),
        min_d2=_closed_form_distance(gammas),
        eigenvalues=tuple(float(g) for g in gammas),
    )


def max_factorizability_qutrit(psi: BipartiteState) -> float:
    """max over frames of |<Psi|U|Psi>|^2 = 1 - min d^2"""
    return 1.0 - min_squared_distance_qutrit(psi).min_d2


def is_separable_qutrit(psi: BipartiteState, tol: float = DEFAULT_SEPARABILITY_TOL) -> QutritSeparabilityVerdict:
    """Separable iff the minimum squared distance vanishes; the preserving frame maps Psi to w Psi"""
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    minimum = min_squared_distance_qutrit(psi)
    separable = minimum.min_d2 <= tol
    logger.debug(f"qutrit min d^2 = {minimum.min_d2:.3e}, separable = {separable}")
    return QutritSeparabilityVerdict(separable, minimum.basis if separable else None, minimum.min_d2)
