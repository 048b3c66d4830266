"""
Energy cost of single-site SQUO kicks on a chain ground state, and factorizing fields.

For O = n . sigma on one site, dE(n) = <G|O H O|G> - <G|H|G> = n^T K n - <G|H|G> with
K_ab = Re <sigma_a G|H|sigma_b G>, so the kick of lowest cost is the eigenvector of the smallest
eigenvalue of K. dE vanishes exactly when the ground state is a product state on that site.
"""

import logging
from dataclasses import asdict, dataclass
from math import cos, pi, sin
from multiprocessing.pool import ThreadPool
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from entgeom.metrics.entropies import tangle
from entgeom.numerics.linalg import CMatrix
from entgeom.spinchain.hamiltonian import (
    GroundStateResult,
    SpinChainSpec,
    build_xy_hamiltonian,
    ground_state,
    parity_sectors,
    sector_ground_state,
)
from entgeom.states.multiqubit import (
    MultiQubitState,
    apply_site_operator,
    check_site,
    single_site_density,
    site_bipartition,
)
from entgeom.unitaries.squo import PAULIS, QubitUnitaryParams, build_squo
from entgeom.utils.algorithms import bisect_root, coordinate_golden_search
from entgeom.utils.decorators import Timeit, timer
from entgeom.utils.errors import NotFound, OutOfRange

logger = logging.getLogger("entgeom")

EXCITATION_GRID = (180, 360)
MIXING_GRID = (45, 90)
GOLDEN_ROUNDS = 20
FACTORIZED_TANGLE = 1e-8
FACTORIZED_EXCITATION = 1e-6
SWEEP_COLUMNS = ["h", "ground_energy", "tangle_site0", "min_dE", "broken_tangle", "broken_min_dE"]


@dataclass(frozen=True)
class ExcitationMinimum:
    """Grid-and-golden minimum of dE over the SQUO sphere, with the eigenvalue bound lambda_min(K) - E"""

    min_dE: float
    argmin: QubitUnitaryParams
    analytic: float


@dataclass(frozen=True)
class BrokenSymmetryState:
    state: MultiQubitState
    tangle: float
    energy: float


@dataclass(frozen=True)
class FactorizingField:
    field: float
    tangle: float
    min_dE: float


def _n_sites(vector: np.ndarray) -> int:
    return int(vector.shape[0]).bit_length() - 1


def _energy(h: CMatrix, vector: np.ndarray) -> float:
    return float(np.vdot(vector, h @ vector).real)


def excitation_energy(g: GroundStateResult, h: CMatrix, site: int, p: QubitUnitaryParams) -> float:
    """<G|O H O|G> - <G|H|G> for the SQUO O(p) acting on `site`"""
    check_site(_n_sites(g.vector), site)
    kicked = apply_site_operator(g.vector, build_squo(p), site)
    return _energy(h, kicked) - _energy(h, g.vector)


def excitation_matrix(g: GroundStateResult, h: CMatrix, site: int) -> np.ndarray:
    """Real symmetric K_ab = Re <sigma_a G|H|sigma_b G>, a, b in (x, y, z)"""
    check_site(_n_sites(g.vector), site)
    kicked = np.stack([apply_site_operator(g.vector, sigma, site) for sigma in PAULIS], axis=1)
    k = (kicked.conj().T @ h @ kicked).real
    return (k + k.T) / 2.0


def min_excitation(
    g: GroundStateResult, h: CMatrix, site: int, n_theta: int = EXCITATION_GRID[0], n_phi: int = EXCITATION_GRID[1]
) -> ExcitationMinimum:
    """
    Minimum of dE over all SQUOs on `site`

    dE is scanned on a (theta, phi) grid through its quadratic form, then refined by alternate
    golden-section searches around the grid argmin.
    """

    k = excitation_matrix(g, h, site)
    reference = _energy(h, g.vector)

    thetas = np.arange(n_theta + 1) * (pi / n_theta)
    phis = np.arange(n_phi) * (2 * pi / n_phi)
    directions = np.stack(
        [
            np.sin(thetas)[:, None] * np.cos(phis)[None, :],
            np.sin(thetas)[:, None] * np.sin(phis)[None, :],
            np.cos(thetas)[:, None] * np.ones_like(phis)[None, :],
        ],
        axis=-1,
    )
    grid = np.einsum("tpa,ab,tpb->tp", directions, k, directions) - reference
    i, j = divmod(int(np.argmin(grid)), n_phi)

    def objective(theta: float, phi: float) -> float:
        n = np.array([sin(theta) * cos(phi), sin(theta) * sin(phi), cos(theta)])
        return float(n @ k @ n) - reference

    theta, phi, best = coordinate_golden_search(
        objective, float(thetas[i]), float(phis[j]), pi / n_theta, 2 * pi / n_phi, (0.0, pi), rounds=GOLDEN_ROUNDS
    )
    analytic = float(np.linalg.eigvalsh(k)[0]) - reference
    return ExcitationMinimum(min_dE=best, argmin=QubitUnitaryParams(theta, phi), analytic=analytic)


def single_site_tangle(state: MultiQubitState, site: int = 0) -> float:
    return tangle(single_site_density(state, site))


def parity_gap(spec: SpinChainSpec) -> float:
    """Lowest energy of the even sigma_z-parity sector minus the lowest of the odd sector"""
    h = build_xy_hamiltonian(spec)
    even, odd = parity_sectors(spec.dim)
    return sector_ground_state(h, even)[0] - sector_ground_state(h, odd)[0]


def broken_symmetry_state(spec: SpinChainSpec, site: int = 0) -> BrokenSymmetryState:
    """
    Least entangled state cos(a) u + exp(ib) sin(a) v of the two parity-sector ground states u, v

    Near a level crossing of the sectors this is the symmetry-broken ground state; at a factorizing
    field it is a product state.
    """

    check_site(spec.n_sites, site)
    h = build_xy_hamiltonian(spec)
    even, odd = parity_sectors(spec.dim)
    _, u = sector_ground_state(h, even)
    _, v = sector_ground_state(h, odd)
    cu = site_bipartition(MultiQubitState(u), site).coeffs
    cv = site_bipartition(MultiQubitState(v), site).coeffs
    rho_uu, rho_vv, rho_uv = cu @ cu.conj().T, cv @ cv.conj().T, cu @ cv.conj().T

    def site_tangle(a, b):
        # 4 det of the site reduction of cos(a) u + exp(ib) sin(a) v, vectorized over a and b
        c, s = np.cos(a), np.sin(a)
        cross = c * s * np.exp(-1j * b)
        rho = (
            (c * c)[..., None, None] * rho_uu
            + (s * s)[..., None, None] * rho_vv
            + cross[..., None, None] * rho_uv
            + np.conj(cross)[..., None, None] * rho_uv.conj().T
        )
        det = rho[..., 0, 0] * rho[..., 1, 1] - rho[..., 0, 1] * rho[..., 1, 0]
        return np.clip(4.0 * det.real, 0.0, 1.0)

    n_a, n_b = MIXING_GRID
    a_grid = np.linspace(0.0, pi / 2, n_a + 1)
    b_grid = np.arange(n_b) * (2 * pi / n_b)
    values = site_tangle(a_grid[:, None], b_grid[None, :])
    i, j = divmod(int(np.argmin(values)), n_b)
    a, b, best = coordinate_golden_search(
        lambda x, y: float(site_tangle(np.array([x]), np.array([y]))[0]),
        float(a_grid[i]),
        float(b_grid[j]),
        (pi / 2) / n_a,
        2 * pi / n_b,
        (0.0, pi / 2),
        rounds=GOLDEN_ROUNDS,
    )
    vector = cos(a) * u + np.exp(1j * b) * sin(a) * v
    state = MultiQubitState(vector / np.linalg.norm(vector))
    return BrokenSymmetryState(state=state, tangle=best, energy=_energy(h, state.amplitudes))


def _check_factorized(spec: SpinChainSpec, threshold: float) -> Optional[FactorizingField]:
    broken = broken_symmetry_state(spec)
    if broken.tangle >= threshold:
        return None
    h = build_xy_hamiltonian(spec)
    g = GroundStateResult(energy=broken.energy, vector=broken.state.amplitudes, gap=0.0)
    excitation = min_excitation(g, h, 0)
    logger.info(f"h = {spec.field:.12f}: tangle = {broken.tangle:.3e}, min dE = {excitation.min_dE:.3e}")
    if excitation.min_dE >= FACTORIZED_EXCITATION:
        return None
    return FactorizingField(field=spec.field, tangle=broken.tangle, min_dE=excitation.min_dE)


@timer
def find_factorizing_field(
    spec_template: SpinChainSpec,
    h_lo: float,
    h_hi: float,
    threshold: float = FACTORIZED_TANGLE,
    max_iter: int = 60,
    scan_points: int = 64,
) -> FactorizingField:
    """
    Largest field in [h_lo, h_hi] where the ground state factorizes

    A finite chain's ground state keeps the sigma_z parity of the Hamiltonian, so factorization shows
    up as a crossing of the lowest levels of both parity sectors, where the ground level is
    degenerate and contains a product state. The parity gap is scanned on `scan_points` intervals,
    each sign change is bisected (max_iter halvings) from the highest field down, and a crossing is
    accepted when its broken-symmetry state has a site-0 tangle below `threshold` and a minimal
    excitation energy below 1e-6.

    Raises NotFound when no crossing of the bracket passes both checks.
    """

    if not h_lo < h_hi:
        raise OutOfRange(f"Empty field bracket [{h_lo}, {h_hi}]")

    def gap_at(field: float) -> float:
        return parity_gap(spec_template.with_field(field))

    fields = np.linspace(h_lo, h_hi, scan_points + 1)
    gaps = [gap_at(float(field)) for field in fields]
    for k in reversed(range(scan_points)):
        if gaps[k] * gaps[k + 1] > 0.0:
            continue
        lo, hi = float(fields[k]), float(fields[k + 1])
        crossing = bisect_root(gap_at, lo, hi, tol=(hi - lo) * 2.0 ** -max_iter, max_iter=max_iter)
        found = _check_factorized(spec_template.with_field(crossing), threshold)
        if found is not None:
            return found
    raise NotFound(f"No factorizing field in [{h_lo}, {h_hi}]")


@dataclass(frozen=True)
class SweepPoint:
    """
    tangle_site0 and min_dE describe the parity-definite ground vector of the eigensolver.
    broken_tangle and broken_min_dE describe the least entangled mix of the two parity-sector ground
    states, with the kick cost measured from the ground energy; both vanish at a factorizing field.
    """

    h: float
    ground_energy: float
    tangle_site0: float
    min_dE: float
    broken_tangle: float
    broken_min_dE: float


def sweep_point(spec: SpinChainSpec) -> SweepPoint:
    h = build_xy_hamiltonian(spec)
    g = ground_state(h)
    broken = broken_symmetry_state(spec)
    kicked = min_excitation(GroundStateResult(energy=broken.energy, vector=broken.state.amplitudes, gap=0.0), h, 0)
    return SweepPoint(
        h=spec.field,
        ground_energy=g.energy,
        tangle_site0=single_site_tangle(g.state, 0),
        min_dE=min_excitation(g, h, 0).min_dE,
        broken_tangle=broken.tangle,
        broken_min_dE=max(kicked.min_dE + broken.energy - g.energy, 0.0),
    )


def field_sweep(spec_template: SpinChainSpec, fields: Sequence[float], workers: int = 1) -> pd.DataFrame:
    """
    Ground energy, site-0 tangles and minimal excitation energies at each field, in the order given

    Points are independent and run on a thread pool when workers > 1.
    """

    specs = [spec_template.with_field(field) for field in fields]
    with Timeit(f"Sweeping {len(specs)} fields", verbose=logger.isEnabledFor(logging.DEBUG)):
        if workers > 1:
            with ThreadPool(workers) as pool:
                points: List[SweepPoint] = list(tqdm(pool.imap(sweep_point, specs), total=len(specs)))
        else:
            points = [sweep_point(spec) for spec in tqdm(specs)]
    return pd.DataFrame([asdict(point) for point in points], columns=SWEEP_COLUMNS)
