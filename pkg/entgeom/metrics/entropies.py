""" Entropic quantities of a reduced density matrix: purity, linear entropy, tangle, von Neumann entropy """

from math import log2, sqrt
from typing import Sequence

import numpy as np

from entgeom.numerics.linalg import det, herm_eig
from entgeom.states.bipartite import ReducedDensity
from entgeom.utils.errors import SizeUnsupported

EIGENVALUE_CLIP = 1e-12


def purity(rho: ReducedDensity) -> float:
    """mu = Tr(rho^2)"""
    m = rho.rho
    return float(np.sum(np.abs(m) ** 2))


def linear_entropy_of_spectrum(gammas: Sequence[float]) -> float:
    """l / (l - 1) (1 - sum gamma^2) for a spectrum of length l"""
    g = np.asarray(gammas, dtype=float)
    dim = g.shape[0]
    return float(dim / (dim - 1) * (1.0 - float(np.sum(g * g))))


def linear_entropy(rho: ReducedDensity) -> float:
    dim = rho.dim
    value = dim / (dim - 1) * (1.0 - purity(rho))
    return min(max(value, 0.0), 1.0)


def tangle(rho: ReducedDensity) -> float:
    """tau = 4 det(rho_A), qubit reductions only"""
    if rho.dim != 2:
        raise SizeUnsupported(f"The tangle is defined for qubit reductions, got dimension {rho.dim}")
    return min(max(4.0 * det(rho.rho).real, 0.0), 1.0)


def von_neumann_of_spectrum(gammas: Sequence[float]) -> float:
    """-sum gamma log2 gamma, with 0 log 0 = 0 and rounding noise below zero clipped"""
    g = np.asarray(gammas, dtype=float)
    g = g[g > 0.0]
    return float(max(-np.sum(g * np.log2(g)), 0.0))


def von_neumann(rho: ReducedDensity) -> float:
    """Entropy of entanglement -Tr(rho log2 rho), in bits"""
    values = herm_eig(rho.rho).values
    values = np.where((values < 0.0) & (values >= -EIGENVALUE_CLIP), 0.0, values)
    return von_neumann_of_spectrum(values)


def binary_entropy(x: float) -> float:
    return von_neumann_of_spectrum([x, 1.0 - x])


def von_neumann_from_tangle(tau: float) -> float:
    """E = -x log2 x - (1 - x) log2 (1 - x) with x = (1 + sqrt(1 - tau)) / 2, for qubit reductions"""
    tau = min(max(float(tau), 0.0), 1.0)
    return binary_entropy((1.0 + sqrt(1.0 - tau)) / 2.0)


def max_von_neumann(dim: int) -> float:
    return log2(dim)
