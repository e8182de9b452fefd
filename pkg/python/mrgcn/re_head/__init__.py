"""Mention pooling, tuple scoring and LogSumExp entity aggregation."""

from re_head.errors import EmptyClusterError, HeadError
from re_head.scorer import (
    PairScorer,
    entity_pair_score,
    mention_embed,
    mention_tuple_score,
    predict,
    score_instance,
    sentence_embed,
)

__all__ = [
    "EmptyClusterError",
    "HeadError",
    "PairScorer",
    "entity_pair_score",
    "mention_embed",
    "mention_tuple_score",
    "predict",
    "score_instance",
    "sentence_embed",
]
