"""Exact and lossy minimisation of deterministic finite automata."""

from .dfa import (
    INF,
    PARTIAL,
    TOTAL,
    Dfa,
    StateMeta,
    complete,
    equivalent,
    merge_state,
    minimise,
    parse_dfa,
    serialize_dfa,
    state_meta,
    to_dot,
    trim,
)
from .distance import (
    DistanceForest,
    DistanceTable,
    acyclic_distance_tree,
    build_distance_forest,
    distance_table,
    forest_lca_level,
)
from .errors import (
    BudgetExceededError,
    ColoringError,
    ConstraintError,
    DeterminismError,
    DfaError,
    DfaFormatError,
    InfiniteDifferenceError,
    NotMinimalError,
    PreconditionError,
    UnknownReferenceError,
)
from .kmin import all_k_sweep, hyper_minimise, k_minimise, k_similar, sizes_for_all_k
from .product import count_symdiff, discrepancy_witness, similarity_bound

__version__ = "0.1.0"

__all__ = [
    "INF",
    "PARTIAL",
    "TOTAL",
    "Dfa",
    "StateMeta",
    "complete",
    "equivalent",
    "merge_state",
    "minimise",
    "parse_dfa",
    "serialize_dfa",
    "state_meta",
    "to_dot",
    "trim",
    "DistanceForest",
    "DistanceTable",
    "acyclic_distance_tree",
    "build_distance_forest",
    "distance_table",
    "forest_lca_level",
    "BudgetExceededError",
    "ColoringError",
    "ConstraintError",
    "DeterminismError",
    "DfaError",
    "DfaFormatError",
    "InfiniteDifferenceError",
    "NotMinimalError",
    "PreconditionError",
    "UnknownReferenceError",
    "all_k_sweep",
    "hyper_minimise",
    "k_minimise",
    "k_similar",
    "sizes_for_all_k",
    "count_symdiff",
    "discrepancy_witness",
    "similarity_bound",
]
