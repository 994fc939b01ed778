"""Exact exterior-product height inequalities.

Schinzel-norm geometry, the extremal wedge constants mu_{L,N}, the
minimal-subset combinatorics of difference systems, norm-ball volumes and
successive minima, and a small S-unit regulator front end.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    InvariantViolation,
    ParseError,
    PreconditionError,
    WedgeHeightsError,
)
from .extreme_points import ExtremePoint, convex_decompose, enumerate_extreme, exposing_functional
from .lattice_geometry import (
    NormBallSpec,
    dual_volume,
    primal_volume,
    reduce_basis,
    reisner_minkowski_report,
    successive_minima,
    theorem_1_2,
)
from .linalg_core import (
    RationalMatrix,
    RationalVector,
    det_exact,
    l1_norm,
    rank_exact,
    schinzel_norm,
    wedge_coordinates,
    wedge_l1,
)
from .mu_search import (
    MuCache,
    c_bound,
    equality_construction,
    mu_exact,
    reduce_mixed,
    verify_theorem_1_1,
    verify_theorem_2_1,
)
from .subset_structure import PairSystem, closure, eta, minimal_partition
from .sunit_io import conjecture_report, height, load_embedding, regulator_from_basis, subgroup_index

__all__ = [
    "BudgetExceeded",
    "DimensionError",
    "DomainError",
    "ExtremePoint",
    "InvariantViolation",
    "MuCache",
    "NormBallSpec",
    "PairSystem",
    "ParseError",
    "PreconditionError",
    "RationalMatrix",
    "RationalVector",
    "WedgeHeightsError",
    "c_bound",
    "closure",
    "conjecture_report",
    "convex_decompose",
    "det_exact",
    "dual_volume",
    "enumerate_extreme",
    "equality_construction",
    "eta",
    "exposing_functional",
    "height",
    "l1_norm",
    "load_embedding",
    "minimal_partition",
    "mu_exact",
    "primal_volume",
    "rank_exact",
    "reduce_basis",
    "reduce_mixed",
    "regulator_from_basis",
    "reisner_minkowski_report",
    "schinzel_norm",
    "subgroup_index",
    "successive_minima",
    "theorem_1_2",
    "verify_theorem_1_1",
    "verify_theorem_2_1",
    "wedge_coordinates",
    "wedge_l1",
]
