"""Multilevel coarsening: repeated matching + MᵀAM."""

import logging
from dataclasses import dataclass

import numpy as np
from coarsen.clause import clause_match_groups, transfer_edges
from coarsen.config import CoarsenConfig, PoolingMethod
from coarsen.errors import DimensionMismatchError
from coarsen.hybrid import hybrid_match
from coarsen.matching import MatchingMatrix, anchors_by_smallest_member
from coarsen.random_pool import random_match
from graph_core import AdjacencyMatrix, LabeledGraph, adjacency
from ingest import DocumentGraph

log = logging.getLogger(__name__)


def coarsen_adjacency(a: AdjacencyMatrix, matching: MatchingMatrix) -> AdjacencyMatrix:
    if a.shape != (matching.n_fine, matching.n_fine):
        raise DimensionMismatchError(
            f"adjacency of shape {a.shape} does not match a matching over {matching.n_fine} nodes"
        )
    dense = matching.to_dense()
    return dense.T @ a.astype(np.int64) @ dense


@dataclass(frozen=True, eq=False)
class HierarchyLevel:
    adjacency: AdjacencyMatrix
    # level-0 tokens inside each node, and the token that names the node
    members: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.adjacency.shape[0]


@dataclass(frozen=True, eq=False)
class GraphHierarchy:
    levels: tuple[HierarchyLevel, ...]
    matchings: tuple[MatchingMatrix, ...]
    method: PoolingMethod
    stopped_early: bool = False

    def __post_init__(self):
        assert len(self.matchings) == len(self.levels) - 1
        for l, matching in enumerate(self.matchings):
            assert matching.n_fine == self.levels[l].size
            assert matching.n_coarse == self.levels[l + 1].size

    @property
    def depth(self) -> int:
        """K, the number of pooling steps."""
        return len(self.matchings)

    def sizes(self) -> list[int]:
        return [level.size for level in self.levels]

    def adjacency(self, level: int) -> AdjacencyMatrix:
        return self.levels[level].adjacency


def _step_seed(seed: int, step: int) -> int:
    return int(np.random.SeedSequence([seed, step]).generate_state(1)[0])


def _match_once(
    method: PoolingMethod,
    a: AdjacencyMatrix,
    typed: LabeledGraph,
    cfg: CoarsenConfig,
    step: int,
) -> tuple[MatchingMatrix, tuple[int, ...]]:
    """One matching pass and, per supernode, the fine node that names it."""
    match method:
        case PoolingMethod.HM:
            matching = hybrid_match(a)
        case PoolingMethod.RANDOM:
            matching = random_match(a, _step_seed(cfg.seed, step), cfg.random_merge_probability)
        case PoolingMethod.IDENTITY:
            matching = MatchingMatrix.identity(a.shape[0])
        case PoolingMethod.CM:
            groups = clause_match_groups(typed, cfg.clause_config())
            matching = MatchingMatrix.from_groups(a.shape[0], [group.members() for group in groups])
            heads = {group.members()[0]: group.head for group in groups}
            return matching, tuple(heads.get(first, first) for first in anchors_by_smallest_member(matching))
    return matching, anchors_by_smallest_member(matching)


def build_hierarchy(
    graph: DocumentGraph | LabeledGraph,
    levels: int,
    cfg: CoarsenConfig = CoarsenConfig(),
) -> GraphHierarchy:
    """G_0..G_K; once a pass merges nothing, the remaining steps are identity matchings."""
    assert levels >= 0
    typed = graph.graph if isinstance(graph, DocumentGraph) else graph
    method = cfg.pooling_method()
    a = adjacency(typed)
    current = HierarchyLevel(
        adjacency=a,
        members=tuple((i,) for i in range(typed.n)),
        representatives=tuple(range(typed.n)),
    )
    hierarchy_levels = [current]
    matchings = list[MatchingMatrix]()
    stopped_early = False
    for level in range(levels):
        composed = MatchingMatrix.identity(current.size)
        anchors = tuple(range(current.size))
        if not stopped_early:
            step_a, step_typed = current.adjacency, typed
            for pass_index in range(cfg.passes_per_level):
                matching, pass_anchors = _match_once(
                    method, step_a, step_typed, cfg, level * cfg.passes_per_level + pass_index
                )
                anchors = tuple(anchors[k] for k in pass_anchors)
                composed = composed.then(matching)
                step_a = coarsen_adjacency(step_a, matching)
                if method is PoolingMethod.CM:
                    step_typed = transfer_edges(step_typed, matching)
            if composed.is_identity and method is not PoolingMethod.IDENTITY:
                stopped_early = True
                log.debug("no merge at level %d, remaining levels are identity", level + 1)
            typed = step_typed
        next_a = coarsen_adjacency(current.adjacency, composed)
        current = HierarchyLevel(
            adjacency=next_a,
            members=tuple(
                tuple(sorted(token for i in group for token in current.members[i]))
                for group in composed.members
            ),
            representatives=tuple(current.representatives[k] for k in anchors),
        )
        hierarchy_levels.append(current)
        matchings.append(composed)
    hierarchy = GraphHierarchy(
        levels=tuple(hierarchy_levels),
        matchings=tuple(matchings),
        method=method,
        stopped_early=stopped_early,
    )
    log.debug("%s hierarchy sizes %s", method.value, hierarchy.sizes())
    return hierarchy
