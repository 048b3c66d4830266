""" useful functions to apply on numpy arrays """

from typing import Iterator, Tuple

import numpy as np


def fix_column_phases(vectors: np.ndarray, threshold: float = 1e-10) -> np.ndarray:
    """Multiply each column by a phase so that its first component above threshold is real positive"""
    fixed = np.array(vectors, dtype=complex, copy=True)
    for k in range(fixed.shape[1]):
        column = fixed[:, k]
        nonzero = np.flatnonzero(np.abs(column) > threshold)
        if nonzero.size:
            pivot = column[nonzero[0]]
            fixed[:, k] = column * (abs(pivot) / pivot)
            fixed[nonzero[0], k] = abs(pivot)
    return fixed


def lexicographic_key(vector: np.ndarray, decimals: int = 9) -> Tuple[float, ...]:
    """Sort key over the interleaved (re, im) parts of a vector, rounded to absorb float noise"""
    pairs = np.stack([vector.real, vector.imag], axis=-1).ravel()
    return tuple(float(x) for x in np.round(pairs, decimals) + 0.0)


def chunk_ranges(total: int, chunk_size: int) -> Iterator[Tuple[int, int, int]]:
    """Yield (chunk_index, start, end) covering range(total) with fixed-size chunks"""
    assert chunk_size > 0
    for chunk_index, start in enumerate(range(0, total, chunk_size)):
        yield chunk_index, start, min(start + chunk_size, total)
