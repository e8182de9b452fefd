"""Document graph construction and entity anonymization."""

from collections.abc import Sequence
from dataclasses import dataclass

from graph_core import (
    ADJACENT,
    COREFERENT,
    SENTENCE_SEQ,
    Edge,
    EdgeKind,
    LabeledGraph,
    NodeId,
    build_graph,
)
from ingest.annotations import RelationInstance
from ingest.conllu import Document
from ingest.errors import AnonymizationError


@dataclass(frozen=True)
class DocumentGraph:
    graph: LabeledGraph
    sentence_spans: tuple[tuple[int, int], ...]
    root_tokens: tuple[NodeId, ...]

    @property
    def n(self) -> int:
        return self.graph.n


def build_document_graph(doc: Document, coref: Sequence[tuple[int, int]] = ()) -> DocumentGraph:
    """Edges: consecutive tokens, head->dependent arcs, coreference pairs, consecutive sentence roots."""
    edges = list[Edge]()
    spans = list[tuple[int, int]]()
    roots = list[NodeId]()
    for offset, sentence in zip(doc.sentence_offsets(), doc.sentences):
        spans.append((offset, offset + len(sentence)))
        for i in range(len(sentence) - 1):
            edges.append(Edge(offset + i, offset + i + 1, ADJACENT))
        for token in sentence:
            if token.head == 0:
                roots.append(offset + token.id - 1)
                continue
            edges.append(Edge(offset + token.head - 1, offset + token.id - 1, EdgeKind.dependency(token.deprel)))
    for a, b in coref:
        edges.append(Edge(a, b, COREFERENT))
    for prev_root, next_root in zip(roots, roots[1:]):
        edges.append(Edge(prev_root, next_root, SENTENCE_SEQ))
    payloads = [(token.form, token.upos) for token in doc.tokens()]
    return DocumentGraph(
        graph=build_graph(doc.token_count, edges, payloads),
        sentence_spans=tuple(spans),
        root_tokens=tuple(roots),
    )


def anonymize(doc: Document, instance: RelationInstance) -> Document:
    """Replace every token of entity k's mentions with ENTITY_k."""
    owner = dict[int, int]()
    forms = [token.form for token in doc.tokens()]
    for ordinal, cluster in enumerate(instance.entities):
        for span in cluster.mentions:
            if span.end > len(forms):
                raise AnonymizationError(f"mention [{span.start}, {span.end}) beyond {len(forms)} tokens")
            for i in span.tokens():
                if owner.setdefault(i, ordinal) != ordinal:
                    raise AnonymizationError(
                        f"token {i} belongs to overlapping mentions of entities {owner[i]} and {ordinal}"
                    )
    if not owner:
        return doc
    for i, ordinal in owner.items():
        forms[i] = f"ENTITY_{ordinal}"
    return doc.with_forms(forms)
