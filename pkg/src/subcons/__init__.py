"""Submodular cost submodular cover (SCSC) and knapsack (SCSK)."""

from .bounds import (
    EASurrogate,
    ModularSurrogate,
    Permutation,
    curve_normalize,
    default_ea_weights,
    ea_surrogate,
    subgradient,
    upper_bound,
    upper_bound_1,
    upper_bound_2,
)
from .errors import (
    InfeasibleError,
    InstanceError,
    ParameterError,
    PreconditionError,
    SchemaError,
    SearchExhaustedError,
    SubconsError,
)
from .exact import ExactReferee, brute_force_scsc, brute_force_scsk
from .instance import InstanceSpec, ProblemInstance
from .oracles import (
    BipartiteNeighborhood,
    CardTruncation,
    CustomOracle,
    FacilityLocation,
    FunctionOracle,
    HardnessHidden,
    HardnessPlain,
    Modular,
    SaturatedSum,
    SqrtModular,
    Sum,
    Truncation,
    truncate,
)
from .properties import check_monotone, check_polymatroid, check_submodular, curvature
from .report import GuaranteeCert, SolveReport
from .sets import TOL, GroundSet, SubsetState
from .solvers import eask, eask_c, eassc, eassc_c, gr, isk, issc, sk_greedy, ssc_dual_greedy, ssc_greedy
from .transforms import (
    BiCriterion,
    InnerSolver,
    combine_covers,
    scsc_via_scsk_binary,
    scsc_via_scsk_linear,
    scsk_via_scsc_binary,
    scsk_via_scsc_linear,
)

__version__ = "0.1.0"
