""" Two-qubit concurrence and the monogamy inequality on multi-qubit pure states """

import logging
from dataclasses import dataclass

import numpy as np

from entgeom.metrics.entropies import tangle
from entgeom.numerics.linalg import as_cmatrix, herm_eig, hermiticity_error
from entgeom.states.multiqubit import MultiQubitState, check_site, single_site_density, two_site_density
from entgeom.unitaries.squo import SIGMA_Y
from entgeom.utils.errors import InvalidDensity

logger = logging.getLogger("entgeom")

DENSITY_TOL = 1e-10
MONOGAMY_TOL = 1e-9
RANK_TOL = 1e-14
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class MonogamyResult:
    lhs: float
    rhs: float
    satisfied: bool
    slack: float


def _check_density(rho: np.ndarray) -> None:
    if rho.shape != (4, 4):
        raise InvalidDensity(f"Expected a 4x4 two-qubit density matrix, got shape {rho.shape}")
    if hermiticity_error(rho) > DENSITY_TOL:
        raise InvalidDensity("Two-qubit density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > DENSITY_TOL:
        raise InvalidDensity(f"Two-qubit density matrix has trace {np.trace(rho)}")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)[0] < -DENSITY_TOL:
        raise InvalidDensity("Two-qubit density matrix is not positive semi-definite")


def concurrence(rho2q) -> float:
    """
    Wootters concurrence max(0, l1 - l2 - l3 - l4)

    The l's are the descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
    They are computed as the singular values of tau_ij = <v_i| sy x sy |v_j*>, where the v_i are the
    eigenvectors of rho scaled by the square roots of their eigenvalues (zero eigenvalues dropped).
    """
    rho = as_cmatrix(rho2q)
    _check_density(rho)
    eig = herm_eig((rho + rho.conj().T) / 2.0, hermitian_tol=DENSITY_TOL)
    support = eig.values > RANK_TOL
    v = eig.vectors[:, support] * np.sqrt(eig.values[support])
    lambdas = np.zeros(4)
    if v.shape[1]:
        singular_values = np.linalg.svd(v.T @ SPIN_FLIP @ v, compute_uv=False)
        lambdas[: singular_values.shape[0]] = singular_values
    return float(min(max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0), 1.0))


def monogamy_check(psi: MultiQubitState, site: int) -> MonogamyResult:
    """
    tau(site | rest) >= sum over the other sites j of C^2(rho_{site, j})

    lhs is the tangle of the single-site reduction, rhs the summed squared pairwise concurrences.
    """
    check_site(psi.n_sites, site)
    lhs = tangle(single_site_density(psi, site))
    rhs = float(
        sum(concurrence(two_site_density(psi, site, other)) ** 2 for other in range(psi.n_sites) if other != site)
    )
    slack = lhs - rhs
    return MonogamyResult(lhs=lhs, rhs=rhs, satisfied=slack >= -MONOGAMY_TOL, slack=slack)
