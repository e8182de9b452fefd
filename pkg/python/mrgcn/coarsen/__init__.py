"""Graph pooling: matchers, matching matrices and multilevel hierarchies."""

from coarsen.clause import (
    CORE_ARGUMENTS,
    ClauseGroup,
    ClauseMatchConfig,
    clause_match,
    clause_match_groups,
    transfer_edges,
)
from coarsen.config import CoarsenConfig, PoolingMethod
from coarsen.dot import level_to_dot, merge_tree_to_dot, node_name
from coarsen.errors import CoarsenError, DimensionMismatchError, MatchingError
from coarsen.hierarchy import (
    GraphHierarchy,
    HierarchyLevel,
    build_hierarchy,
    coarsen_adjacency,
)
from coarsen.hybrid import hybrid_match, nhem_match, normalized_edge_weight, sem_match
from coarsen.matching import MatchingMatrix
from coarsen.random_pool import random_match

__all__ = [
    "CORE_ARGUMENTS",
    "ClauseGroup",
    "ClauseMatchConfig",
    "CoarsenConfig",
    "CoarsenError",
    "DimensionMismatchError",
    "GraphHierarchy",
    "HierarchyLevel",
    "MatchingError",
    "MatchingMatrix",
    "PoolingMethod",
    "build_hierarchy",
    "clause_match",
    "clause_match_groups",
    "coarsen_adjacency",
    "hybrid_match",
    "level_to_dot",
    "merge_tree_to_dot",
    "nhem_match",
    "node_name",
    "normalized_edge_weight",
    "random_match",
    "sem_match",
    "transfer_edges",
]
