""" command line entry point: state reports, oracle checks, monogamy tables, boundary curves and chain sweeps """

import json
import logging
import logging.config
import sys
from math import sqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import fire
import numpy as np
import pandas as pd
from tqdm import tqdm

from entgeom.metrics.boundary import DEFAULT_POINTS, generate_curves, write_curves
from entgeom.metrics.concurrence import MONOGAMY_TOL, monogamy_check
from entgeom.metrics.entropies import tangle
from entgeom.metrics.report import entanglement_report, identity_violations, site_reports
from entgeom.oracle.minimizers import DEFAULT_GRID, basis_scan_qubit, grid_min_squo, random_basis_min_squtuo
from entgeom.spinchain.excitation import field_sweep, find_factorizing_field
from entgeom.spinchain.hamiltonian import SpinChainSpec
from entgeom.states.bipartite import BipartiteState, read_json, reduced_density, state_from_dict
from entgeom.states.multiqubit import (
    MultiQubitState,
    ghz_state,
    haar_random_multiqubit,
    multiqubit_from_dict,
    product_multiqubit,
    w_state,
)
from entgeom.states.sampling import complex_gaussian, haar_random_state, make_rng
from entgeom.unitaries.squo import DEFAULT_SEPARABILITY_TOL, optimal_squo
from entgeom.unitaries.squtuo import min_squared_distance_qutrit
from entgeom.utils.cast import cast_int_tuple, cast_seed_range
from entgeom.utils.decorators import Timeit
from entgeom.utils.errors import IdentityViolation, OutOfRange, ParseError
from entgeom.utils.path import write_text

logger = logging.getLogger("entgeom")

ORACLE_TOL = 1e-12
MONOGAMY_SITES = (2, 8)
DEFAULT_SAMPLES = 100_000
FIXTURES = ("ghz", "w", "product")


def _log_output_dict(infos: Dict):
    logger.info("{")
    for key, value in infos.items():
        logger.info(f"\t{key}: {value}")
    logger.info("}")


def setup_logging(logging_level: int):
    """Setup the logging."""
    logging.config.dictConfig(dict(version=1, disable_existing_loggers=False))
    logging_format = "%(asctime)s [%(levelname)s]: %(message)s"
    logging.basicConfig(level=logging_level, format=logging_format, stream=sys.stderr)


def _write_json(payload: Dict[str, Any], out: Optional[str]) -> None:
    write_text(json.dumps(payload) + "\n", out)


def _write_csv(df: pd.DataFrame, out: Optional[str]) -> None:
    write_text(df.to_csv(index=False), out)


def _load_input(
    state: Optional[str], random: Union[None, str, Sequence[int]]
) -> Tuple[Union[BipartiteState, MultiQubitState], Dict[str, Any]]:
    """The state given by exactly one of a state file or a "dim_a,dim_b,seed" triple, and its provenance"""
    if (state is None) == (random is None):
        raise ParseError("Give exactly one of --state FILE or --random DIM_A,DIM_B,SEED")
    if state is not None:
        payload = read_json(state)
        provenance: Dict[str, Any] = {"source": "file", "path": str(state)}
        if isinstance(payload, dict) and "n_sites" in payload:
            return multiqubit_from_dict(payload), provenance
        return state_from_dict(payload), provenance
    dim_a, dim_b, seed = cast_int_tuple(random, 3, "random")
    provenance = {"source": "random", "dim_a": dim_a, "dim_b": dim_b, "seed": seed}
    return haar_random_state(dim_a, dim_b, seed), provenance


def analyze(
    state: Optional[str] = None,
    random: Union[None, str, Sequence[int]] = None,
    tol: float = DEFAULT_SEPARABILITY_TOL,
    strict: bool = False,
    out: Optional[str] = None,
    verbose: int = logging.INFO,
):
    """
    Entanglement report of a state, as one JSON object

    Parameters
    ----------
    state : Optional[str]
        Path of a state file: {"dim_a", "dim_b", "amplitudes"} for a bipartite state, or
        {"n_sites", "amplitudes"} for an N-qubit state (one report per site against the rest)
    random : Optional[str]
        "dim_a,dim_b,seed" to analyze a Haar-random state instead
    tol : float
        Separability threshold on the minimum squared distance
    strict : bool
        Exit with code 1 when min_d2 = linear entropy (and the other report identities) fail
        by more than 1e-10
    out : Optional[str]
        Output path, stdout by default
    verbose : int
        Logging level
    """
    setup_logging(verbose)
    psi, provenance = _load_input(state, random)

    if isinstance(psi, MultiQubitState):
        reports = site_reports(psi, tol)
        payload: Dict[str, Any] = {"input": provenance, "n_sites": psi.n_sites}
        payload["sites"] = [report.to_dict() for report in reports]
    else:
        reports = [entanglement_report(psi, tol)]
        payload = {"input": provenance, **reports[0].to_dict()}
        _log_output_dict({k: v for k, v in payload.items() if k != "minimizer"})

    _write_json(payload, out)

    violations = [message for report in reports for message in identity_violations(report)]
    for message in violations:
        logger.warning(message)
    if strict and violations:
        raise IdentityViolation(f"{len(violations)} identity violation(s)")


def oracle_check(
    state: Optional[str] = None,
    random: Union[None, str, Sequence[int]] = None,
    grid: Union[None, str, Sequence[int]] = None,
    samples: Optional[int] = None,
    seed: int = 0,
    out: Optional[str] = None,
    verbose: int = logging.INFO,
):
    """
    Compare the closed-form minimum squared distance with a brute-force oracle

    Qubit states default to the (theta, phi) grid scan ("n_theta,n_phi", 720,1440 by default);
    --samples switches them to the Haar frame scan of 4 rho'_11 rho'_22. Qutrit states always use
    the Haar frame scan (--samples, 100000 by default). Exits with code 1 when the oracle beats the
    analytic minimum by more than 1e-12.
    """
    setup_logging(verbose)
    psi, provenance = _load_input(state, random)
    if not isinstance(psi, BipartiteState):
        raise ParseError("oracle-check needs a bipartite state file")

    payload: Dict[str, Any] = {"input": provenance}
    with Timeit("Running the oracle", verbose=verbose <= logging.INFO):
        if psi.dim_a == 2 and samples is None:
            n_theta, n_phi = cast_int_tuple(grid, 2, "grid") if grid is not None else DEFAULT_GRID
            analytic = optimal_squo(psi).min_d2
            oracle = grid_min_squo(psi, n_theta, n_phi).min_d2
            payload.update({"method": "grid", "grid": [n_theta, n_phi]})
        elif grid is not None:
            raise ParseError("--grid only applies to qubit states without --samples")
        elif psi.dim_a == 2:
            analytic = tangle(reduced_density(psi))
            oracle = basis_scan_qubit(psi, int(samples), seed)
            payload.update({"method": "frames", "samples": int(samples), "seed": seed})
        else:
            n_samples = DEFAULT_SAMPLES if samples is None else int(samples)
            analytic = min_squared_distance_qutrit(psi).min_d2
            oracle = random_basis_min_squtuo(psi, n_samples, seed).min_d2
            payload.update({"method": "frames", "samples": n_samples, "seed": seed})

    gap = oracle - analytic
    payload.update({"analytic": analytic, "oracle": oracle, "gap": gap})
    _write_json(payload, out)
    if gap < -ORACLE_TOL:
        raise IdentityViolation(f"Oracle value {oracle!r} is below the analytic minimum {analytic!r}")


def _monogamy_state(fixture: Optional[str], n: int, seed: int) -> MultiQubitState:
    if fixture is None:
        return haar_random_multiqubit(n, seed)
    if fixture == "ghz":
        return ghz_state(n)
    if fixture == "w":
        return w_state(n)
    rng = make_rng(seed)
    return product_multiqubit([complex_gaussian(rng, 2) for _ in range(n)])


def monogamy(
    n: int = 3,
    seeds: Union[str, int, Sequence[int]] = "0..9",
    fixture: Optional[str] = None,
    out: Optional[str] = None,
    verbose: int = logging.INFO,
):
    """
    Monogamy slack tau(site|rest) - sum_j C^2(site, j) of N-qubit states, as CSV seed,site,lhs,rhs,slack

    One Haar-random N-qubit state per seed of the "A..B" range, or one of the fixtures
    ghz, w, product (a random product state per seed). Exits with code 1 when a slack is
    below -1e-9.
    """
    setup_logging(verbose)
    if not MONOGAMY_SITES[0] <= n <= MONOGAMY_SITES[1]:
        raise OutOfRange(f"n must be in [{MONOGAMY_SITES[0]}, {MONOGAMY_SITES[1]}], got {n}")
    if fixture is not None and fixture not in FIXTURES:
        raise ParseError(f"Unknown fixture {fixture!r}, expected one of {', '.join(FIXTURES)}")

    rows: List[Dict[str, Any]] = []
    for seed in tqdm(cast_seed_range(seeds)):
        psi = _monogamy_state(fixture, n, seed)
        for site in range(n):
            result = monogamy_check(psi, site)
            rows.append({"seed": seed, "site": site, "lhs": result.lhs, "rhs": result.rhs, "slack": result.slack})

    df = pd.DataFrame(rows, columns=["seed", "site", "lhs", "rhs", "slack"])
    _write_csv(df, out)
    worst = float(df["slack"].min())
    logger.info(f"{len(df)} rows, minimum slack {worst:.3e}")
    if worst < -MONOGAMY_TOL:
        raise IdentityViolation(f"Monogamy violated: minimum slack {worst!r}")


def boundary(points: int = DEFAULT_POINTS, out: Optional[str] = None, verbose: int = logging.INFO):
    """Boundary curves of the qutrit (E, S_L) region as CSV curve,param,E,SL, `points` rows per curve"""
    setup_logging(verbose)
    write_curves(generate_curves(int(points)), out)


def _chain_template(n: int, gamma: float, coupling: float, periodic: bool) -> SpinChainSpec:
    return SpinChainSpec(n_sites=int(n), gamma=float(gamma), field=0.0, coupling=float(coupling), periodic=periodic)


def spinchain(
    n: int = 8,
    gamma: float = 0.5,
    hmin: float = 0.0,
    hmax: float = 2.0,
    steps: int = 200,
    coupling: float = 1.0,
    periodic: bool = True,
    workers: int = 1,
    out: Optional[str] = None,
    verbose: int = logging.INFO,
):
    """
    Transverse-field sweep of an XY chain, as CSV h,ground_energy,tangle_site0,min_dE,broken_tangle,broken_min_dE

    The broken_* columns follow the least entangled ground state of the two parity sectors and both
    vanish at a factorizing field.

    `steps` fields evenly spaced over [hmin, hmax], bounds included.
    """
    setup_logging(verbose)
    if steps < 1 or hmin < 0 or hmax < hmin:
        raise OutOfRange(f"Invalid sweep: {steps} steps over [{hmin}, {hmax}]")
    template = _chain_template(n, gamma, coupling, periodic)
    fields = np.linspace(float(hmin), float(hmax), int(steps))
    _write_csv(field_sweep(template, fields, workers=int(workers)), out)


def factorizing_field(
    n: int = 8,
    gamma: float = 0.5,
    hmin: float = 0.1,
    hmax: float = 2.0,
    coupling: float = 1.0,
    periodic: bool = True,
    scan_points: int = 64,
    out: Optional[str] = None,
    verbose: int = logging.INFO,
):
    """Largest field in [hmin, hmax] where the chain's ground state factorizes, as JSON"""
    setup_logging(verbose)
    template = _chain_template(n, gamma, coupling, periodic)
    found = find_factorizing_field(template, float(hmin), float(hmax), scan_points=int(scan_points))
    _write_json(
        {
            "input": {"n": template.n_sites, "gamma": template.gamma, "coupling": template.coupling},
            "field": found.field,
            "tangle": found.tangle,
            "min_dE": found.min_dE,
            "closed_form": template.coupling * sqrt(1.0 - template.gamma ** 2),
        },
        out,
    )


MULTI_VALUE_FLAGS = {"--random": 3, "--grid": 2}


COMMANDS = {
    "analyze": analyze,
    "oracle-check": oracle_check,
    "monogamy": monogamy,
    "boundary": boundary,
    "spinchain": spinchain,
    "factorizing-field": factorizing_field,
}


def join_multi_value_flags(argv: Sequence[str]) -> List[str]:
    """
    Rewrite "--random 3 4 7" and "--grid 36 72" as "--random=3,4,7" and "--grid=36,72",
    the single-token form fire parses into one argument
    """
    joined: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        n_values = MULTI_VALUE_FLAGS.get(token)
        i += 1
        if n_values is None:
            joined.append(token)
            continue
        values = []
        while len(values) < n_values and i < len(argv) and not argv[i].startswith("--"):
            values.append(argv[i])
            i += 1
        joined.append(f"{token}={','.join(values)}" if values else token)
    return joined


def main(argv: Optional[List[str]] = None):
    """Main entry point"""
    argv = join_multi_value_flags(sys.argv[1:] if argv is None else argv)
    try:
        fire.Fire(COMMANDS, command=argv)
    except IdentityViolation as e:
        logger.error(str(e))
        sys.exit(1)
    except ValueError as e:
        logger.error(str(e))
        sys.exit(2)


if __name__ == "__main__":
    main()
