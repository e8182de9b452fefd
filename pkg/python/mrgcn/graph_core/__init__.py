"""Typed token graphs, adjacency extraction and hop distances."""

from graph_core.errors import GraphConstructionError, GraphError
from graph_core.graph import (
    ADJACENT,
    COREFERENT,
    SENTENCE_SEQ,
    UNREACHABLE,
    AdjacencyMatrix,
    Edge,
    EdgeCategory,
    EdgeKind,
    LabeledGraph,
    NodeId,
    Unreachable,
    adjacency,
    adjacency_degrees,
    adjacency_neighbors,
    build_graph,
    degree,
)
from graph_core.paths import hop_distances, shortest_path_length

__all__ = [
    "ADJACENT",
    "COREFERENT",
    "SENTENCE_SEQ",
    "UNREACHABLE",
    "AdjacencyMatrix",
    "Edge",
    "EdgeCategory",
    "EdgeKind",
    "GraphConstructionError",
    "GraphError",
    "LabeledGraph",
    "NodeId",
    "Unreachable",
    "adjacency",
    "adjacency_degrees",
    "adjacency_neighbors",
    "build_graph",
    "degree",
    "hop_distances",
    "shortest_path_length",
]
