"""Sparse navigable graphs: construction, verification, and lower-bound experiments."""

from .construct import BuildReport, build_knn_baseline, build_randomized, build_setcover
from .errors import (
    DegenerateHoods,
    DuplicatePoints,
    InvalidDistance,
    NavGraphError,
    NonFiniteDistance,
    OutOfRange,
    RouteCycle,
    SizeMismatch,
    WrongInstance,
    WrongKind,
)
from .graph import DirectedGraph, RouteTrace, RoutingTable, degree_stats, greedy_search, route_all_pairs
from .lowerlab import (
    LowerBoundReport,
    NearNeighborhoodSet,
    binom_tail_exact,
    build_hoods,
    calibrate_ch,
    certified_lower_bound,
    cross_check_lb,
    hub_degree_audit,
    max_inner_product,
    overlap_stats,
)
from .model import (
    DistanceOracle,
    PointSet,
    check_distinct,
    euclidean_oracle,
    gen_hub_instance,
    gen_random_sign_points,
)
from .permute import PermutationTable, build_permutations, nearest_m
from .verify import VerifyReport, audit_claim5, verify_exhaustive, verify_property

__version__ = "0.1.0"
