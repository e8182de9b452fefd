"""Clause Matching: merge dependents into their heads unless the arc is a core argument."""

import logging
from dataclasses import dataclass, field
from typing import Final

from coarsen.matching import MatchingMatrix
from graph_core import (
    Edge,
    EdgeCategory,
    EdgeKind,
    LabeledGraph,
    NodeId,
    build_graph,
    degree,
)

log = logging.getLogger(__name__)

CORE_ARGUMENTS: Final[frozenset[str]] = frozenset({
    "nsubj", "nsubj:pass", "dobj", "iobj", "csubj", "csubj:pass", "ccomp", "xcomp",
})


@dataclass(frozen=True)
class ClauseMatchConfig:
    core_arguments: frozenset[str] = field(default=CORE_ARGUMENTS)

    def mergeable(self, kind: EdgeKind) -> bool:
        if kind.category is EdgeCategory.COREFERENCE:
            return True
        return kind.category is EdgeCategory.DEPENDENCY and kind.dep_label not in self.core_arguments


@dataclass(frozen=True)
class ClauseGroup:
    head: NodeId
    children: tuple[NodeId, ...]
    labels: tuple[str, ...]

    def members(self) -> tuple[NodeId, ...]:
        return tuple(sorted((self.head, *self.children)))


def clause_match_groups(g: LabeledGraph, cfg: ClauseMatchConfig = ClauseMatchConfig()) -> list[ClauseGroup]:
    visit_order = sorted(range(g.n), key=lambda v: (degree(g, v), v))
    absorbed = set[NodeId]()
    merged_into = dict[NodeId, tuple[NodeId, str]]()
    for v in visit_order:
        # a node that took in a child this round is already a supernode
        if v in absorbed:
            continue
        for edge in g.heads_of(v):
            if not cfg.mergeable(edge.kind):
                continue
            head = edge.src if edge.dst == v else edge.dst
            if head in merged_into:
                continue
            merged_into[v] = (head, edge.kind.label())
            absorbed.add(head)
            break
    children = dict[NodeId, list[tuple[NodeId, str]]]()
    for child, (head, label) in merged_into.items():
        children.setdefault(head, []).append((child, label))
    return [
        ClauseGroup(
            head=head,
            children=tuple(child for child, _ in sorted(children[head])),
            labels=tuple(label for _, label in sorted(children[head])),
        )
        for head in sorted(children)
    ]


def clause_match(g: LabeledGraph, cfg: ClauseMatchConfig = ClauseMatchConfig()) -> MatchingMatrix:
    return MatchingMatrix.from_groups(g.n, [group.members() for group in clause_match_groups(g, cfg)])


def transfer_edges(g: LabeledGraph, matching: MatchingMatrix) -> LabeledGraph:
    """Typed graph over supernodes; edges keep their kind, merge-internal edges are dropped."""
    edges = list[Edge]()
    for edge in g.edges:
        src, dst = matching.assignment[edge.src], matching.assignment[edge.dst]
        if src == dst:
            continue
        edges.append(Edge(src, dst, edge.kind))
    return build_graph(matching.n_coarse, edges)
