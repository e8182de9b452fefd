"""Hybrid Matching: structural equivalence matching followed by normalized heavy edge matching."""

import math
from collections.abc import Set

import numpy as np
import numpy.typing as npt
from coarsen.matching import MatchingMatrix
from graph_core import AdjacencyMatrix, NodeId, adjacency_degrees, adjacency_neighbors


def normalized_edge_weight(
    a: AdjacencyMatrix,
    u: NodeId,
    v: NodeId,
    degrees: npt.NDArray[np.int64] | None = None,
) -> float:
    """A[u][v] / sqrt(D(u) * D(v)) with D the distinct-neighbor count."""
    weight = a[u, v]
    assert weight > 0, f"no edge between {u} and {v}"
    if degrees is None:
        degrees = adjacency_degrees(a)
    assert degrees[u] > 0 and degrees[v] > 0
    return float(weight / math.sqrt(int(degrees[u]) * int(degrees[v])))


def sem_match(a: AdjacencyMatrix) -> list[tuple[NodeId, ...]]:
    """Nodes sharing the exact same (nonempty) neighbor set, grouped."""
    classes = dict[frozenset[NodeId], list[NodeId]]()
    for u in range(a.shape[0]):
        neighbors = frozenset(adjacency_neighbors(a, u))
        if neighbors:
            classes.setdefault(neighbors, []).append(u)
    groups = [tuple(members) for members in classes.values() if len(members) >= 2]
    return sorted(groups, key=lambda group: group[0])


def nhem_match(a: AdjacencyMatrix, frozen: Set[NodeId] = frozenset()) -> list[tuple[NodeId, NodeId]]:
    degrees = adjacency_degrees(a)
    unavailable = set(frozen)
    pairs = list[tuple[NodeId, NodeId]]()
    visit_order = sorted(
        (u for u in range(a.shape[0]) if u not in unavailable),
        key=lambda u: (int(degrees[u]), u),
    )
    for u in visit_order:
        if u in unavailable:
            continue
        candidates = [v for v in adjacency_neighbors(a, u) if v not in unavailable]
        if not candidates:
            continue
        best = min(candidates, key=lambda v: (-normalized_edge_weight(a, u, v, degrees), v))
        pairs.append((min(u, best), max(u, best)))
        unavailable.update((u, best))
    return pairs


def hybrid_match(a: AdjacencyMatrix) -> MatchingMatrix:
    groups = sem_match(a)
    frozen = {node for group in groups for node in group}
    pairs = nhem_match(a, frozen)
    return MatchingMatrix.from_groups(a.shape[0], [*groups, *pairs])
