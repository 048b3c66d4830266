""" Derivative-free one-dimensional search algorithms """

from math import sqrt
from typing import Callable, Tuple

import numpy as np

from entgeom.utils.errors import NoConvergence

INV_PHI = (sqrt(5.0) - 1.0) / 2.0

# pylint: disable=invalid-name
def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """
    Bisection on a continuous function whose sign differs at both ends of [lo, hi]

    Parameters
    ----------
    f : Callable[[float], float]
        Function with f(lo) * f(hi) <= 0
    lo, hi : float
        bracket of the root
    tol : float
        width of the final bracket
    max_iter : int
        maximum number of halvings

    Returns
    -------
    x : float
        middle of the final bracket

    :complexity: O(log((hi - lo) / tol))
    """

    f_lo = f(lo)
    if f_lo == 0.0:
        return lo
    f_hi = f(hi)
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise ValueError(f"No sign change in bracket [{lo}, {hi}]")

    for _ in range(max_iter):
        mid = lo + (hi - lo) / 2.0
        if hi - lo <= tol:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo + (hi - lo) / 2.0


def golden_section_minimize(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200
) -> Tuple[float, float]:
    """
    Golden-section search of the minimum of a unimodal function on [lo, hi]

    Returns the best (argmin, minimum) among the evaluated points, the bracket ends included,
    so the result is never worse than f(lo) or f(hi).
    """

    if hi < lo:
        raise ValueError(f"Empty interval [{lo}, {hi}]")

    best_x, best_f = lo, f(lo)
    f_hi = f(hi)
    if f_hi < best_f:
        best_x, best_f = hi, f_hi

    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if f2 > f1:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)

    for x, fx in ((x1, f1), (x2, f2)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def coordinate_golden_search(
    f: Callable[[float, float], float],
    x: float,
    y: float,
    x_step: float,
    y_step: float,
    x_bounds: Tuple[float, float],
    rounds: int = 20,
) -> Tuple[float, float, float]:
    """
    Alternate golden-section searches in x then y around a starting point (coordinate descent)

    x is kept inside x_bounds, y is unbounded (periodic variables are wrapped by f).
    The returned point is never worse than the starting one.

    Returns
    -------
    (x, y, f(x, y)) of the best point found
    """

    best = f(x, y)
    for _ in range(rounds):
        x_lo, x_hi = max(x_bounds[0], x - x_step), min(x_bounds[1], x + x_step)
        new_x, value = golden_section_minimize(lambda t: f(t, y), x_lo, x_hi)
        if value <= best:
            x, best = new_x, value
        new_y, value = golden_section_minimize(lambda t: f(x, t), y - y_step, y + y_step)
        if value <= best:
            y, best = new_y, value
    return x, y, best


def power_iteration(
    matvec: Callable[[np.ndarray], np.ndarray], start: np.ndarray, tol: float = 1e-10, max_iter: int = 100_000
) -> Tuple[float, np.ndarray]:
    """
    Dominant eigenpair of a positive semi-definite operator given by its matrix-vector product

    Stops once the residual ||A v - value v|| is below tol * max(1, value).
    Returns (eigenvalue, unit eigenvector); raises NoConvergence past max_iter iterations.
    """

    v = np.asarray(start, dtype=complex)
    v = v / np.linalg.norm(v)
    for _ in range(max_iter):
        w = matvec(v)
        value = float(np.vdot(v, w).real)
        if np.linalg.norm(w - value * v) <= tol * max(1.0, abs(value)):
            return value, v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0, v
        v = w / norm
    raise NoConvergence(f"Power iteration did not converge in {max_iter} iterations")
