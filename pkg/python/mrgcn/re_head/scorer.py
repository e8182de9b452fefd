"""Relation scoring over token representations.

Mentions are max-pooled over their span, concatenated with a max-pooled
document vector, and fed to two linear layers. Entity-level scores aggregate
every mention tuple with a per-class LogSumExp.
"""

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from ingest import EntityCluster, MentionSpan, RelationInstance, TaskKind
from numeric import (
    Node,
    Parameter,
    ShapeMismatchError,
    add_bias,
    column_logsumexp,
    concat_cols,
    concat_rows,
    matmul,
    relu,
    row_max_pool,
)
from re_head.errors import EmptyClusterError, HeadError


@dataclass(frozen=True, eq=False)
class PairScorer:
    entity_count: int
    hidden: int
    W1: Parameter
    b1: Parameter
    W2: Parameter
    b2: Parameter

    @classmethod
    def create(cls, *, entity_count: int, d: int, d_h: int, num_classes: int) -> "PairScorer":
        return PairScorer(
            entity_count=entity_count,
            hidden=d,
            W1=Parameter(np.zeros(((entity_count + 1) * d, d_h)), name="head.W1"),
            b1=Parameter(np.zeros((1, d_h)), name="head.b1"),
            W2=Parameter(np.zeros((d_h, num_classes)), name="head.W2"),
            b2=Parameter(np.zeros((1, num_classes)), name="head.b2"),
        )

    @property
    def num_classes(self) -> int:
        return self.W2.cols

    def parameters(self) -> list[Parameter]:
        return [self.W1, self.b1, self.W2, self.b2]


def mention_embed(h: Node, span: MentionSpan) -> Node:
    if span.end <= span.start:
        raise HeadError(f"empty mention span [{span.start}, {span.end})")
    if span.end > h.rows:
        raise HeadError(f"mention span [{span.start}, {span.end}) beyond {h.rows} tokens")
    return row_max_pool(h, list(span.tokens()))


def sentence_embed(h: Node) -> Node:
    """Max-pooled over every token of the document."""
    return row_max_pool(h, list(range(h.rows)))


def mention_tuple_score(scorer: PairScorer, mentions: Sequence[Node], sentence_vec: Node) -> Node:
    if len(mentions) != scorer.entity_count:
        raise HeadError(f"scorer expects {scorer.entity_count} mentions, got {len(mentions)}")
    features = concat_cols([*mentions, sentence_vec])
    if features.cols != scorer.W1.rows:
        raise ShapeMismatchError(f"head input width {features.cols}, expected {scorer.W1.rows}")
    hidden = relu(add_bias(matmul(features, scorer.W1), scorer.b1))
    return add_bias(matmul(hidden, scorer.W2), scorer.b2)


def entity_pair_score(
    scorer: PairScorer,
    clusters: Sequence[EntityCluster],
    h: Node,
    sentence_vec: Node,
) -> Node:
    """Per class: log Σ over mention tuples of exp(tuple logit)."""
    for cluster in clusters:
        if not cluster.mentions:
            raise EmptyClusterError(f"entity {cluster.entity_id} has no mentions")
    embedded = [[mention_embed(h, span) for span in cluster.mentions] for cluster in clusters]
    tuple_logits = [
        mention_tuple_score(scorer, list(mentions), sentence_vec)
        for mentions in itertools.product(*embedded)
    ]
    return column_logsumexp(concat_rows(tuple_logits))


def score_instance(scorer: PairScorer, instance: RelationInstance, h: Node) -> Node:
    sentence_vec = sentence_embed(h)
    if instance.task is TaskKind.ENTITY_LEVEL:
        return entity_pair_score(scorer, instance.entities, h, sentence_vec)
    # mention-level targets: each entity is one mention spread over its spans
    mentions = [
        row_max_pool(h, sorted({i for span in cluster.mentions for i in span.tokens()}))
        for cluster in instance.entities
    ]
    return mention_tuple_score(scorer, mentions, sentence_vec)


def predict(logits: Node | npt.ArrayLike) -> int:
    values = logits.value if isinstance(logits, Node) else np.asarray(logits, dtype=np.float64)
    if values.size == 0:
        raise HeadError("cannot predict from empty logits")
    return int(np.argmax(values.reshape(-1)))
