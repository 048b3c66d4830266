# pylint: disable=unused-import,missing-docstring

from entgeom.external.cli import analyze, boundary, factorizing_field, monogamy, oracle_check, spinchain
from entgeom.metrics.boundary import generate_curves, region_test
from entgeom.metrics.concurrence import concurrence, monogamy_check
from entgeom.metrics.entropies import linear_entropy, purity, tangle, von_neumann
from entgeom.metrics.report import entanglement_report
from entgeom.states.bipartite import BipartiteState, load_state, reduced_density, save_state
from entgeom.states.sampling import haar_random_state
from entgeom.unitaries.squo import QubitUnitaryParams, optimal_squo
from entgeom.unitaries.squtuo import QutritBasis, min_squared_distance_qutrit

from entgeom.version import __author__, __version__
