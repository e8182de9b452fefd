"""Entity distance: how far apart the target entities sit in the document graph."""

import itertools
from collections.abc import Sequence

from analysis.errors import AnalysisError
from graph_core import UNREACHABLE, AdjacencyMatrix, Unreachable, hop_distances
from ingest import EntityCluster, MentionSpan

Distance = float | Unreachable


def mention_pair_distance(a: AdjacencyMatrix, first: MentionSpan, second: MentionSpan) -> Distance:
    """Mean hop distance over every (token of first, token of second) pair."""
    n = a.shape[0]
    if first.end > n or second.end > n:
        raise AnalysisError(f"mention spans {first} / {second} exceed a graph of {n} nodes")
    distances = hop_distances(a, list(first.tokens()))[:, second.start:second.end]
    if not (distances < float("inf")).all():
        return UNREACHABLE
    return float(distances.mean())


def _cluster_distance(a: AdjacencyMatrix, first: EntityCluster, second: EntityCluster) -> Distance:
    best: float | None = None
    for m1, m2 in itertools.product(first.mentions, second.mentions):
        distance = mention_pair_distance(a, m1, m2)
        if distance is UNREACHABLE:
            continue
        best = distance if best is None else min(best, distance)
    return UNREACHABLE if best is None else best


def entity_distance(a: AdjacencyMatrix, clusters: Sequence[EntityCluster]) -> Distance:
    """Max over entity pairs of the closest mention pair."""
    if len(clusters) < 2:
        raise AnalysisError(f"entity distance needs at least 2 entities, got {len(clusters)}")
    worst = 0.0
    for first, second in itertools.combinations(clusters, 2):
        distance = _cluster_distance(a, first, second)
        if distance is UNREACHABLE:
            return UNREACHABLE
        worst = max(worst, distance)
    return worst
