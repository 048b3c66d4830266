"""
Admissible (von Neumann entropy, linear entropy) pairs of qutrit reductions.

At fixed entropy E the linear entropy of a qutrit reduction lies between a lower boundary, reached
by spectra (p, p, 1 - 2p), and an upper boundary reached by spectra (0, q, 1 - q) up to the cusp
E = 1 and by (1 - 2q, q, q) beyond it. E is in bits, not normalized by log2(3).
"""

import logging
from dataclasses import dataclass
from math import log2
from typing import Iterator, Optional, Tuple

import numpy as np
import pandas as pd

from entgeom.metrics.entropies import linear_entropy_of_spectrum, von_neumann_of_spectrum
from entgeom.utils.algorithms import bisect_root
from entgeom.utils.errors import OutOfRange
from entgeom.utils.path import write_text

logger = logging.getLogger("entgeom")

MIN_POINTS = 2
DEFAULT_POINTS = 256
REGION_TOL = 1e-9
ROOT_TOL = 1e-12
CUSP_ENTROPY = 1.0
MAX_ENTROPY = log2(3)
CSV_FLOAT_FORMAT = "%.12g"

Spectrum = Tuple[float, float, float]


def lower_spectrum(p: float) -> Spectrum:
    return (p, p, 1.0 - 2.0 * p)


def upper_left_spectrum(q: float) -> Spectrum:
    return (0.0, q, 1.0 - q)


def upper_right_spectrum(q: float) -> Spectrum:
    return (1.0 - 2.0 * q, q, q)


# name -> (spectrum family, parameter range)
CURVE_FAMILIES = {
    "lower": (lower_spectrum, (0.0, 1.0 / 3.0)),
    "upper_left": (upper_left_spectrum, (0.0, 0.5)),
    "upper_right": (upper_right_spectrum, (1.0 / 3.0, 0.5)),
}


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Parameter-ordered points of one boundary line; points[:, 0] is E (bits), points[:, 1] is S_L"""

    name: str
    params: np.ndarray
    points: np.ndarray

    @property
    def entropies(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def linear_entropies(self) -> np.ndarray:
        return self.points[:, 1]


@dataclass(frozen=True)
class BoundaryCurves:
    lower: BoundaryCurve
    upper_left: BoundaryCurve
    upper_right: BoundaryCurve

    def __iter__(self) -> Iterator[BoundaryCurve]:
        return iter((self.lower, self.upper_left, self.upper_right))


@dataclass(frozen=True)
class RegionVerdict:
    """inside the region within tol; margin is the signed distance to the nearer S_L bound"""

    inside: bool
    margin: float
    s_min: float
    s_max: float


def spectrum_point(spectrum: Spectrum) -> Tuple[float, float]:
    """(E, S_L) of a diagonal qutrit density matrix"""
    return von_neumann_of_spectrum(spectrum), linear_entropy_of_spectrum(spectrum)


def _curve(name: str, n_points: int) -> BoundaryCurve:
    family, (lo, hi) = CURVE_FAMILIES[name]
    params = np.linspace(lo, hi, n_points)
    points = np.array([spectrum_point(family(float(t))) for t in params], dtype=float)
    points[:, 1] = np.clip(points[:, 1], 0.0, 1.0)
    return BoundaryCurve(name=name, params=params, points=points)


def generate_curves(n_points: int = DEFAULT_POINTS) -> BoundaryCurves:
    """
    The three boundary lines, n_points each

    lower runs from (0, 0) to (log2 3, 1), upper_left from (0, 0) to the cusp (1, 3/4),
    upper_right from (log2 3, 1) back to the cusp.
    """
    if n_points < MIN_POINTS:
        raise ValueError(f"n_points must be at least {MIN_POINTS}, got {n_points}")
    return BoundaryCurves(*(_curve(name, n_points) for name in CURVE_FAMILIES))


def _linear_entropy_at(name: str, entropy: float) -> float:
    """S_L of the curve point whose entropy is `entropy`, by bisection on the monotone parametrization"""
    family, (lo, hi) = CURVE_FAMILIES[name]

    def entropy_of(t: float) -> float:
        return von_neumann_of_spectrum(family(t))

    e_lo, e_hi = entropy_of(lo), entropy_of(hi)
    if (entropy - e_lo) * (entropy - e_hi) >= 0.0:
        # at or beyond an end of the curve, up to rounding
        t = lo if abs(entropy - e_lo) <= abs(entropy - e_hi) else hi
    else:
        t = bisect_root(lambda x: entropy_of(x) - entropy, lo, hi, tol=ROOT_TOL)
    return linear_entropy_of_spectrum(family(t))


def linear_entropy_bounds(entropy: float) -> Tuple[float, float]:
    """[S_min(E), S_max(E)]; the upper bound switches from upper_left to upper_right at the cusp E = 1"""
    s_min = _linear_entropy_at("lower", entropy)
    s_max = _linear_entropy_at("upper_left" if entropy <= CUSP_ENTROPY else "upper_right", entropy)
    return s_min, s_max


def region_test(entropy: float, linear_entropy: float, tol: float = REGION_TOL) -> RegionVerdict:
    """
    Whether (E, S_L) is reachable by a qutrit reduction

    Parameters
    ----------
    entropy : float
        von Neumann entropy E in bits, within [0, log2 3] up to tol
    linear_entropy : float
        S_L to test
    tol : float
        slack on both the E range and the S_L interval
    """

    if not -tol <= entropy <= MAX_ENTROPY + tol:
        raise OutOfRange(f"Entropy {entropy} outside [0, log2(3)]")
    entropy = min(max(float(entropy), 0.0), MAX_ENTROPY)
    s_min, s_max = linear_entropy_bounds(entropy)
    inside = s_min - tol <= linear_entropy <= s_max + tol
    margin = min(linear_entropy - s_min, s_max - linear_entropy)
    return RegionVerdict(inside=bool(inside), margin=float(margin), s_min=s_min, s_max=s_max)


def curves_to_frame(curves: BoundaryCurves) -> pd.DataFrame:
    """One row per point, columns curve,param,E,SL, curves in lower/upper_left/upper_right order"""
    frames = [
        pd.DataFrame(
            {"curve": curve.name, "param": curve.params, "E": curve.entropies, "SL": curve.linear_entropies}
        )
        for curve in curves
    ]
    return pd.concat(frames, ignore_index=True)


def curves_to_csv(curves: BoundaryCurves) -> str:
    return curves_to_frame(curves).to_csv(index=False, float_format=CSV_FLOAT_FORMAT)


def write_curves(curves: BoundaryCurves, path: Optional[str] = None) -> None:
    write_text(curves_to_csv(curves), path)
    logger.debug(f"Wrote {sum(len(c.params) for c in curves)} boundary points to {path or 'stdout'}")

