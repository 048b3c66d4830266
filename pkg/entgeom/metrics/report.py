""" Summary of every entanglement quantity of a bipartite pure state, for reporting and the command line """

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Union

from entgeom.metrics.entropies import linear_entropy, purity, tangle, von_neumann
from entgeom.states.bipartite import BipartiteState, reduced_density
from entgeom.states.multiqubit import MultiQubitState, site_bipartition
from entgeom.unitaries.squo import DEFAULT_SEPARABILITY_TOL, QubitUnitaryParams, optimal_squo
from entgeom.unitaries.squtuo import QutritBasis, min_squared_distance_qutrit

logger = logging.getLogger("entgeom")

Minimizer = Union[QubitUnitaryParams, QutritBasis]


@dataclass(frozen=True)
class EntanglementReport:
    """
    Entanglement of a (dim x D) pure state seen from subsystem A

    min_d2 is the minimum squared distance between the state and its image under the local
    unitaries of A (SQUOs for qubits, SQUTUOs for qutrits), reached at `minimizer`.
    tangle is only defined for qubits.
    """

    dim: int
    purity: float
    linear_entropy: float
    tangle: Optional[float]
    von_neumann: float
    min_d2: float
    max_factorizability: float
    separable: bool
    minimizer: Minimizer
    degenerate: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim_a": self.dim,
            "purity": self.purity,
            "linear_entropy": self.linear_entropy,
            "tangle": self.tangle,
            "von_neumann": self.von_neumann,
            "min_d2": self.min_d2,
            "max_factorizability": self.max_factorizability,
            "separable": self.separable,
            "minimizer": minimizer_to_dict(self.minimizer),
            "degenerate": self.degenerate,
        }


def minimizer_to_dict(minimizer: Minimizer) -> Dict[str, Any]:
    if isinstance(minimizer, QubitUnitaryParams):
        return {"theta": minimizer.theta, "phi": minimizer.phi}
    return {"frame": [[[float(z.real), float(z.imag)] for z in row] for row in minimizer.frame]}


def entanglement_report(psi: BipartiteState, tol: float = DEFAULT_SEPARABILITY_TOL) -> EntanglementReport:
    """
    Compute the report of a bipartite state

    Parameters
    ----------
    psi : BipartiteState
        (2 x D) or (3 x D) pure state
    tol : float
        separability threshold on min_d2
    """

    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    rho = reduced_density(psi)
    if psi.dim_a == 2:
        qubit = optimal_squo(psi)
        min_d2, minimizer, degenerate = qubit.min_d2, qubit.params1, qubit.degenerate
        tau: Optional[float] = tangle(rho)
    else:
        qutrit = min_squared_distance_qutrit(psi)
        min_d2, minimizer, degenerate = qutrit.min_d2, qutrit.basis, False
        tau = None

    report = EntanglementReport(
        dim=psi.dim_a,
        purity=purity(rho),
        linear_entropy=linear_entropy(rho),
        tangle=tau,
        von_neumann=von_neumann(rho),
        min_d2=min_d2,
        max_factorizability=1.0 - min_d2,
        separable=min_d2 <= tol,
        minimizer=minimizer,
        degenerate=degenerate,
    )
    logger.debug(f"({psi.dim_a} x {psi.dim_b}) state: S_L = {report.linear_entropy:.6e}, E = {report.von_neumann:.6e}")
    return report


def identity_violations(report: EntanglementReport, tol: float = 1e-10) -> List[str]:
    """The report invariants that do not hold within tol, as readable messages"""
    violations = []
    if abs(report.min_d2 - report.linear_entropy) > tol:
        violations.append(f"min_d2 = {report.min_d2!r} differs from linear_entropy = {report.linear_entropy!r}")
    if report.tangle is not None and abs(report.tangle - report.linear_entropy) > tol:
        violations.append(f"tangle = {report.tangle!r} differs from linear_entropy = {report.linear_entropy!r}")
    dim = report.dim
    if abs(report.purity + (dim - 1) / dim * report.linear_entropy - 1.0) > tol:
        violations.append(f"purity = {report.purity!r} is inconsistent with linear_entropy")
    return violations


def site_reports(psi: MultiQubitState, tol: float = DEFAULT_SEPARABILITY_TOL) -> List[EntanglementReport]:
    """One report per site, each site against the rest of the chain"""
    return [entanglement_report(site_bipartition(psi, site), tol) for site in range(psi.n_sites)]
