"""Hop distances over adjacency matrices."""

import numpy as np
import numpy.typing as npt
from graph_core.graph import UNREACHABLE, AdjacencyMatrix, NodeId, Unreachable
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path


def hop_distances(a: AdjacencyMatrix, sources: list[NodeId] | None = None) -> npt.NDArray[np.float64]:
    """BFS hop counts from each source (all nodes when None); np.inf marks disconnected pairs."""
    if a.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.float64)
    return np.atleast_2d(shortest_path(
        csr_matrix(a != 0),
        method="D",
        directed=False,
        unweighted=True,
        indices=sources,
    ))


def shortest_path_length(a: AdjacencyMatrix, u: NodeId, v: NodeId) -> int | Unreachable:
    if u == v:
        return 0
    distance = hop_distances(a, [u])[0, v]
    if not np.isfinite(distance):
        return UNREACHABLE
    return int(distance)
