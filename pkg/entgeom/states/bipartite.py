""" Pure states of a (dA x D) bipartite system, their reductions and their file format """

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import fsspec
import numpy as np

from entgeom.numerics.linalg import CMatrix, hermiticity_error
from entgeom.utils.errors import BadDims, EntanglementGeometryError, InvalidDensity, NotNormalized, ParseError
from entgeom.utils.path import make_path_absolute

logger = logging.getLogger("entgeom")

SUBSYSTEM_A_DIMS = (2, 3)
NORM_TOL = 1e-9
DENSITY_TOL = 1e-12


def normalize_amplitudes(amplitudes: np.ndarray) -> np.ndarray:
    """Renormalize amplitudes whose norm is within NORM_TOL of one, reject the others"""
    if not np.all(np.isfinite(amplitudes)):
        raise EntanglementGeometryError("Amplitudes must be finite")
    norm = float(np.linalg.norm(amplitudes))
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"State norm is {norm!r}, expected 1 within {NORM_TOL}")
    return amplitudes / norm


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """
    Pure state of a (dim_a x dim_b) system.

    coeffs[s, n] is the amplitude on |s>_A |n>_B. Inputs within NORM_TOL of unit norm are
    renormalized, anything further away raises NotNormalized.
    """

    coeffs: CMatrix

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 2:
            raise BadDims(f"Coefficients must be a dim_a x dim_b matrix, got shape {coeffs.shape}")
        dim_a, dim_b = coeffs.shape
        if dim_a not in SUBSYSTEM_A_DIMS or dim_b < 2:
            raise BadDims(f"Unsupported dimensions ({dim_a} x {dim_b}): dim_a must be 2 or 3 and dim_b >= 2")
        coeffs = normalize_amplitudes(coeffs)
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim_a(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def dim_b(self) -> int:
        return int(self.coeffs.shape[1])

    @property
    def amplitudes(self) -> np.ndarray:
        """Row-major amplitude vector over (a-index, b-index)"""
        return self.coeffs.reshape(-1)


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """Hermitian, positive semi-definite, trace-one density matrix of subsystem A"""

    rho: CMatrix

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in SUBSYSTEM_A_DIMS:
            raise BadDims(f"Reduced density must be 2x2 or 3x3, got shape {rho.shape}")
        if hermiticity_error(rho) > DENSITY_TOL:
            raise InvalidDensity("Reduced density is not Hermitian")
        if abs(np.trace(rho) - 1.0) > DENSITY_TOL:
            raise InvalidDensity(f"Reduced density has trace {np.trace(rho)}")
        if np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)[0] < -DENSITY_TOL:
            raise InvalidDensity("Reduced density has a negative eigenvalue")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return int(self.rho.shape[0])


def reduced_density(psi: BipartiteState) -> ReducedDensity:
    """rho_A = C C^dagger, i.e. (rho_A)_st = sum_n c_{n,s} conj(c_{n,t})"""
    c = psi.coeffs
    rho = c @ c.conj().T
    return ReducedDensity((rho + rho.conj().T) / 2.0)


def product_state(a_vec: Sequence[complex], b_vec: Sequence[complex]) -> BipartiteState:
    """|a> (x) |b> with both factors normalized first"""
    a = np.asarray(a_vec, dtype=complex)
    b = np.asarray(b_vec, dtype=complex)
    return BipartiteState(np.outer(a / np.linalg.norm(a), b / np.linalg.norm(b)))


def schmidt_state(amplitudes: Sequence[float], dim_b: Optional[int] = None) -> BipartiteState:
    """sum_k amplitudes[k] |k>_A |k>_B"""
    amps = np.asarray(amplitudes, dtype=complex)
    dim_b = dim_b if dim_b is not None else len(amps)
    coeffs = np.zeros((len(amps), dim_b), dtype=complex)
    coeffs[np.arange(len(amps)), np.arange(len(amps))] = amps
    return BipartiteState(coeffs)


def bell_state() -> BipartiteState:
    """(|up 0> + |down 1>) / sqrt(2)"""
    return schmidt_state([1 / np.sqrt(2), 1 / np.sqrt(2)])


def maximally_entangled_state(dim_a: int, dim_b: Optional[int] = None) -> BipartiteState:
    return schmidt_state(np.full(dim_a, 1 / np.sqrt(dim_a)), dim_b)


def apply_b_unitary(psi: BipartiteState, u) -> BipartiteState:
    """Right-multiply the coefficients by a dim_b x dim_b unitary (a unitary acting on subsystem B only)"""
    u = np.asarray(u, dtype=complex)
    if u.shape != (psi.dim_b, psi.dim_b):
        raise BadDims(f"Expected a {psi.dim_b}x{psi.dim_b} unitary, got shape {u.shape}")
    return BipartiteState(psi.coeffs @ u)


def encode_amplitudes(amplitudes: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(amplitudes).reshape(-1)]


def decode_amplitudes(raw: Any, expected: int) -> np.ndarray:
    """Parse [[re, im], ...] into a complex vector of the expected length"""
    if not isinstance(raw, list) or len(raw) != expected:
        count = len(raw) if isinstance(raw, list) else "no"
        raise ParseError(f"Expected {expected} amplitudes, got {count}")
    try:
        values = [complex(float(re), float(im)) for re, im in raw]
    except (TypeError, ValueError):
        raise ParseError("Amplitudes must be [re, im] pairs of numbers") from None
    return np.array(values, dtype=complex)


def state_to_dict(psi: BipartiteState) -> Dict[str, Any]:
    return {"dim_a": psi.dim_a, "dim_b": psi.dim_b, "amplitudes": encode_amplitudes(psi.amplitudes)}


def state_from_dict(payload: Any) -> BipartiteState:
    if not isinstance(payload, dict):
        raise ParseError("State file must contain a JSON object")
    try:
        dim_a, dim_b = int(payload["dim_a"]), int(payload["dim_b"])
    except KeyError as e:
        raise ParseError(f"Missing field {e}") from None
    except (TypeError, ValueError):
        raise ParseError("dim_a and dim_b must be integers") from None
    if dim_a not in SUBSYSTEM_A_DIMS or dim_b < 2:
        raise BadDims(f"Unsupported dimensions ({dim_a} x {dim_b})")
    amplitudes = decode_amplitudes(payload.get("amplitudes"), dim_a * dim_b)
    return BipartiteState(amplitudes.reshape(dim_a, dim_b))


def read_json(path: str) -> Any:
    try:
        with fsspec.open(make_path_absolute(path), "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON in {path}: {e}") from None
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        raise ParseError(f"Cannot read {path}: {e}") from None


def write_json(payload: Dict[str, Any], path: str) -> None:
    with fsspec.open(make_path_absolute(path), "w", encoding="utf-8") as f:
        json.dump(payload, f)


def save_state(psi: BipartiteState, path: str) -> None:
    """Write {"dim_a", "dim_b", "amplitudes": [[re, im], ...]} (row-major) to path"""
    write_json(state_to_dict(psi), path)
    logger.debug(f"Saved {psi.dim_a}x{psi.dim_b} state to {path}")


def load_state(path: str) -> BipartiteState:
    return state_from_dict(read_json(path))
