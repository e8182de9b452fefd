"""Typed multigraph over token nodes."""

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Final, Literal, TypeAlias

import numpy as np
import numpy.typing as npt
from graph_core.errors import GraphConstructionError

NodeId: TypeAlias = int
AdjacencyMatrix: TypeAlias = npt.NDArray[np.int64]


class EdgeCategory(Enum):
    ADJACENCY = "adjacency"
    DEPENDENCY = "dependency"
    COREFERENCE = "coreference"
    SENTENCE_SEQ = "sentence_seq"
    MERGED = "merged"


@dataclass(frozen=True)
class EdgeKind:
    category: EdgeCategory
    dep_label: str | None = None

    def __post_init__(self):
        if (self.category is EdgeCategory.DEPENDENCY) != bool(self.dep_label):
            raise GraphConstructionError(
                f"dep_label must be set exactly for dependency edges, got {self.category.value}/{self.dep_label!r}"
            )

    @property
    def directed(self) -> bool:
        return self.category is EdgeCategory.DEPENDENCY

    def label(self) -> str:
        if self.dep_label:
            return self.dep_label
        return self.category.value

    @classmethod
    def dependency(cls, dep_label: str) -> "EdgeKind":
        return EdgeKind(EdgeCategory.DEPENDENCY, dep_label)


ADJACENT: Final[EdgeKind] = EdgeKind(EdgeCategory.ADJACENCY)
COREFERENT: Final[EdgeKind] = EdgeKind(EdgeCategory.COREFERENCE)
SENTENCE_SEQ: Final[EdgeKind] = EdgeKind(EdgeCategory.SENTENCE_SEQ)


@dataclass(frozen=True)
class Edge:
    src: NodeId
    dst: NodeId
    kind: EdgeKind


class _Unreachable(Enum):
    UNREACHABLE = "unreachable"

    def __repr__(self) -> str:
        return "UNREACHABLE"


Unreachable: TypeAlias = Literal[_Unreachable.UNREACHABLE]
UNREACHABLE: Final = _Unreachable.UNREACHABLE


@dataclass(frozen=True)
class LabeledGraph:
    """Token graph; dependency edges point head -> dependent, all others are symmetric."""

    n: int
    edges: tuple[Edge, ...]
    nodes: tuple[Hashable, ...] = field(default=())

    @cached_property
    def neighbors(self) -> tuple[frozenset[NodeId], ...]:
        neighbor_sets: list[set[NodeId]] = [set() for _ in range(self.n)]
        for edge in self.edges:
            neighbor_sets[edge.src].add(edge.dst)
            neighbor_sets[edge.dst].add(edge.src)
        return tuple(frozenset(s) for s in neighbor_sets)

    def heads_of(self, v: NodeId) -> list[Edge]:
        """Edges that can carry v into another node, in insertion order."""
        return [
            edge for edge in self.edges
            if edge.dst == v or (edge.src == v and not edge.kind.directed)
        ]

    def payload(self, v: NodeId) -> Hashable | None:
        if v < len(self.nodes):
            return self.nodes[v]
        return None


def _canonical(src: NodeId, dst: NodeId, kind: EdgeKind) -> Edge:
    if not kind.directed and src > dst:
        src, dst = dst, src
    return Edge(src, dst, kind)


def build_graph(
    n: int,
    edges: Iterable[tuple[NodeId, NodeId, EdgeKind] | Edge],
    nodes: Sequence[Hashable] = (),
) -> LabeledGraph:
    if n < 0:
        raise GraphConstructionError(f"node count must be non-negative, got {n}")
    if nodes and len(nodes) != n:
        raise GraphConstructionError(f"expected {n} node payloads, got {len(nodes)}")
    seen = set[Edge]()
    kept = list[Edge]()
    for raw in edges:
        src, dst, kind = (raw.src, raw.dst, raw.kind) if isinstance(raw, Edge) else raw
        if not (0 <= src < n and 0 <= dst < n):
            raise GraphConstructionError(f"endpoint out of range: edge ({src}, {dst}, {kind.label()}) with n={n}")
        if src == dst:
            raise GraphConstructionError(f"self-loop: edge ({src}, {dst}, {kind.label()})")
        edge = _canonical(src, dst, kind)
        if edge in seen:
            continue
        seen.add(edge)
        kept.append(edge)
    return LabeledGraph(n=n, edges=tuple(kept), nodes=tuple(nodes))


def degree(g: LabeledGraph, v: NodeId) -> int:
    return len(g.neighbors[v])


def adjacency(g: LabeledGraph) -> AdjacencyMatrix:
    """Level-0 adjacency: 0/1, symmetric, direction and edge kind dropped."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for edge in g.edges:
        a[edge.src, edge.dst] = 1
        a[edge.dst, edge.src] = 1
    return a


def adjacency_degrees(a: AdjacencyMatrix) -> npt.NDArray[np.int64]:
    """Distinct-neighbor counts; the diagonal never counts."""
    off_diagonal = a != 0
    np.fill_diagonal(off_diagonal, False)
    return off_diagonal.sum(axis=1).astype(np.int64)


def adjacency_neighbors(a: AdjacencyMatrix, u: NodeId) -> list[NodeId]:
    return [int(v) for v in np.flatnonzero(a[u]) if v != u]


