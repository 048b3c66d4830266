"""
Pure states of N qubits.

Amplitude index convention is little-endian: site k is bit k of the basis index, bit value 0 is
spin up (sigma_z = +1). Any single site against the rest is a (2 x 2**(N-1)) bipartite state.
"""

from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from entgeom.numerics.linalg import CMatrix
from entgeom.states.bipartite import (
    BipartiteState,
    ReducedDensity,
    normalize_amplitudes,
    decode_amplitudes,
    encode_amplitudes,
    read_json,
    reduced_density,
    write_json,
)
from entgeom.states.sampling import complex_gaussian, make_rng
from entgeom.utils.errors import BadDims, BadSite, ParseError, TooLarge

MIN_SITES = 2
MAX_SITES = 10


def _n_sites_of(length: int) -> int:
    n_sites = int(length).bit_length() - 1
    if length < 1 or 1 << n_sites != length:
        raise BadDims(f"Amplitude vector length {length} is not a power of two")
    if n_sites > MAX_SITES:
        raise TooLarge(f"At most {MAX_SITES} qubits are supported, got {n_sites}")
    if n_sites < MIN_SITES:
        raise BadDims(f"At least {MIN_SITES} qubits are needed, got {n_sites}")
    return n_sites


@dataclass(frozen=True, eq=False)
class MultiQubitState:
    """Normalized amplitude vector of length 2**n_sites (little-endian site order)"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        _n_sites_of(amplitudes.shape[0])
        amplitudes = normalize_amplitudes(amplitudes)
        amplitudes.flags.writeable = False
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n_sites(self) -> int:
        return _n_sites_of(self.amplitudes.shape[0])


def check_site(n_sites: int, site: int) -> None:
    if not 0 <= int(site) < n_sites:
        raise BadSite(f"Site {site} out of range for {n_sites} sites")


def _as_tensor(amplitudes: np.ndarray) -> np.ndarray:
    n_sites = _n_sites_of(amplitudes.shape[0])
    # numpy axis 0 is the most significant bit, i.e. site n_sites - 1
    return amplitudes.reshape((2,) * n_sites)


def site_bipartition(psi: MultiQubitState, site: int) -> BipartiteState:
    """Site `site` as subsystem A, the remaining N - 1 qubits as subsystem B"""
    n_sites = psi.n_sites
    check_site(n_sites, site)
    tensor = np.moveaxis(_as_tensor(psi.amplitudes), n_sites - 1 - site, 0)
    return BipartiteState(tensor.reshape(2, -1))


def single_site_density(psi: MultiQubitState, site: int) -> ReducedDensity:
    return reduced_density(site_bipartition(psi, site))


def two_site_density(psi: MultiQubitState, site_i: int, site_j: int) -> CMatrix:
    """4x4 reduction on sites (i, j), basis index 2 * b_i + b_j"""
    n_sites = psi.n_sites
    check_site(n_sites, site_i)
    check_site(n_sites, site_j)
    if site_i == site_j:
        raise BadSite("Two-site reduction needs two distinct sites")
    tensor = np.moveaxis(_as_tensor(psi.amplitudes), [n_sites - 1 - site_i, n_sites - 1 - site_j], [0, 1])
    m = tensor.reshape(4, -1)
    rho = m @ m.conj().T
    return (rho + rho.conj().T) / 2.0


def apply_site_operator(amplitudes: np.ndarray, operator: CMatrix, site: int) -> np.ndarray:
    """Apply a 2x2 operator on one site of an N-qubit amplitude vector"""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    tensor = _as_tensor(amplitudes)
    n_sites = tensor.ndim
    check_site(n_sites, site)
    axis = n_sites - 1 - site
    tensor = np.tensordot(np.asarray(operator, dtype=complex), tensor, axes=([1], [axis]))
    return np.moveaxis(tensor, 0, axis).reshape(-1)


def haar_random_multiqubit(n_sites: int, seed: int) -> MultiQubitState:
    if not MIN_SITES <= n_sites <= MAX_SITES:
        raise BadDims(f"n_sites must be in [{MIN_SITES}, {MAX_SITES}], got {n_sites}")
    amplitudes = complex_gaussian(make_rng(seed), 1 << n_sites)
    return MultiQubitState(amplitudes / np.linalg.norm(amplitudes))


def ghz_state(n_sites: int) -> MultiQubitState:
    amplitudes = np.zeros(1 << n_sites, dtype=complex)
    amplitudes[0] = amplitudes[-1] = 1 / np.sqrt(2)
    return MultiQubitState(amplitudes)


def w_state(n_sites: int) -> MultiQubitState:
    amplitudes = np.zeros(1 << n_sites, dtype=complex)
    amplitudes[[1 << k for k in range(n_sites)]] = 1 / np.sqrt(n_sites)
    return MultiQubitState(amplitudes)


def product_multiqubit(site_states: Sequence[Sequence[complex]]) -> MultiQubitState:
    """Tensor product of single-qubit states, site_states[k] sitting on site k"""
    amplitudes = np.ones(1, dtype=complex)
    for state in site_states:
        vec = np.asarray(state, dtype=complex)
        # the new site becomes the most significant bit
        amplitudes = np.kron(vec / np.linalg.norm(vec), amplitudes)
    return MultiQubitState(amplitudes)


def multiqubit_to_dict(psi: MultiQubitState) -> Dict[str, Any]:
    return {"n_sites": psi.n_sites, "amplitudes": encode_amplitudes(psi.amplitudes)}


def multiqubit_from_dict(payload: Any) -> MultiQubitState:
    if not isinstance(payload, dict) or "n_sites" not in payload:
        raise ParseError("Multi-qubit state file must be a JSON object with an n_sites field")
    try:
        n_sites = int(payload["n_sites"])
    except (TypeError, ValueError):
        raise ParseError("n_sites must be an integer") from None
    if n_sites > MAX_SITES:
        raise TooLarge(f"At most {MAX_SITES} qubits are supported, got {n_sites}")
    if n_sites < MIN_SITES:
        raise BadDims(f"At least {MIN_SITES} qubits are needed, got {n_sites}")
    return MultiQubitState(decode_amplitudes(payload.get("amplitudes"), 1 << n_sites))


def save_multiqubit_state(psi: MultiQubitState, path: str) -> None:
    write_json(multiqubit_to_dict(psi), path)


def load_multiqubit_state(path: str) -> MultiQubitState:
    return multiqubit_from_dict(read_json(path))
