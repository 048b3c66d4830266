""" Small dense complex linear algebra: Hermitian eigensolvers, determinants, products, traces """

import logging
from dataclasses import dataclass
from math import sqrt
from typing import Tuple

import numpy as np

from entgeom.utils.array_functions import fix_column_phases, lexicographic_key
from entgeom.utils.errors import (
    EntanglementGeometryError,
    NoConvergence,
    NonHermitian,
    ShapeMismatch,
    SizeUnsupported,
)

logger = logging.getLogger("entgeom")

CMatrix = np.ndarray

HERMITIAN_TOL = 1e-12
CLUSTER_TOL = 1e-11
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvectors (as columns)"""

    values: np.ndarray
    vectors: CMatrix


def as_cmatrix(m) -> CMatrix:
    """Cast to a 2-D complex128 array with finite entries"""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ShapeMismatch(f"Expected a matrix, got an array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise EntanglementGeometryError("Matrix has non-finite entries")
    return arr


def _require_square(m: CMatrix) -> None:
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"Expected a square matrix, got shape {m.shape}")


def matmul(a, b) -> CMatrix:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> CMatrix:
    return as_cmatrix(a).conj().T


def trace(a) -> complex:
    a = as_cmatrix(a)
    _require_square(a)
    return complex(np.trace(a))


def det(m) -> complex:
    """Cofactor-expansion determinant of a matrix of size at most 3"""
    m = as_cmatrix(m)
    _require_square(m)
    n = m.shape[0]
    if n > 3:
        raise SizeUnsupported(f"det is implemented for sizes up to 3, got {n}")
    if n == 1:
        return complex(m[0, 0])
    if n == 2:
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return complex(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def hermiticity_error(m: CMatrix) -> float:
    """max-norm of H - H^dagger"""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = as_cmatrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def jacobi_eigh(h: CMatrix, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> Tuple[np.ndarray, CMatrix]:
    """
    Cyclic Jacobi eigensolver for a Hermitian matrix using complex plane rotations

    Each rotation R acts on the (p, q) plane with R_pp = R_qq = c, R_pq = s e, R_qp = -s conj(e),
    where e is the phase of h_pq, and zeroes h_pq in R^dagger h R.
    Sweeps stop once the off-diagonal Frobenius norm is below tol * ||h||_F.
    """

    a = np.array(h, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), v

    for sweep in range(max_sweeps + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * norm:
            logger.debug(f"Jacobi converged after {sweep} sweeps")
            return np.diag(a).real.copy(), v
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                abs_g = abs(g)
                if abs_g <= 1e-300:
                    continue
                e = g / abs_g
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs_g)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(e) * col_q
                a[:, q] = s * e * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * np.conj(e) * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * np.conj(e) * vec_q
                v[:, q] = s * e * vec_p + c * vec_q

    raise NoConvergence(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")


def _canonical_cluster_basis(vectors: CMatrix) -> CMatrix:
    """
    Basis of span(vectors) that only depends on the span: pivoted Gram-Schmidt over the columns
    P e_j of the span projector, scanning j in index order.
    Works on the coordinates conj(vectors[j, :]) of P e_j in the given basis.
    """

    k = vectors.shape[1]
    residuals = vectors.conj().T.copy()
    chosen = []
    for _ in range(k):
        norms = np.linalg.norm(residuals, axis=0)
        j = int(np.flatnonzero(norms >= 0.5 * norms.max())[0])
        w = residuals[:, j] / norms[j]
        for u in chosen:
            w = w - u * np.vdot(u, w)
        w = w / np.linalg.norm(w)
        chosen.append(w)
        residuals = residuals - np.outer(w, w.conj() @ residuals)
    return vectors @ np.column_stack(chosen)


def _canonicalize(values: np.ndarray, vectors: CMatrix) -> Tuple[np.ndarray, CMatrix]:
    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    n = values.shape[0]
    scale = max(1.0, float(np.max(np.abs(values)))) if n else 1.0
    out = np.empty_like(vectors)

    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[j + 1] - values[j] <= CLUSTER_TOL * scale:
            j += 1
        block = vectors[:, i : j + 1]
        if j > i:
            block = fix_column_phases(_canonical_cluster_basis(block))
            columns = sorted(range(block.shape[1]), key=lambda c: lexicographic_key(block[:, c]), reverse=True)
            block = block[:, columns]
        else:
            block = fix_column_phases(block)
        out[:, i : j + 1] = block
        i = j + 1
    return values, out


def herm_eig(h, method: str = "lapack", hermitian_tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix with a reproducible eigenvector convention

    Parameters
    ----------
    h : array-like
        square Hermitian matrix
    method : str
        "lapack" (numpy.linalg.eigh) or "jacobi" (cyclic complex Jacobi rotations)
    hermitian_tol : float
        maximum allowed entry of |h - h^dagger|

    Returns
    -------
    EigenDecomposition
        ascending values; each vector's first component above 1e-10 is real positive and
        degenerate clusters get a basis that only depends on their eigenspace
    """

    h = as_cmatrix(h)
    _require_square(h)
    error = hermiticity_error(h)
    if error > hermitian_tol:
        raise NonHermitian(f"Matrix is not Hermitian: max |H - H^dagger| = {error:.3e}")
    h = (h + h.conj().T) / 2.0

    if method == "lapack":
        try:
            values, vectors = np.linalg.eigh(h)
        except np.linalg.LinAlgError as e:
            raise NoConvergence(str(e)) from e
    elif method == "jacobi":
        values, vectors = jacobi_eigh(h)
    else:
        raise ValueError(f"Unknown eigensolver method: {method}")

    values, vectors = _canonicalize(np.asarray(values, dtype=float), vectors)
    return EigenDecomposition(values=values, vectors=vectors)

