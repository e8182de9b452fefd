"""Random pooling baseline: every edge merges its endpoints with a fixed probability."""

import numpy as np
from coarsen.matching import MatchingMatrix
from graph_core import AdjacencyMatrix


def random_match(a: AdjacencyMatrix, seed: int, probability: float = 0.5) -> MatchingMatrix:
    n = a.shape[0]
    rows, cols = np.nonzero(np.triu(a, k=1))
    draws = np.random.default_rng(seed).random(len(rows))
    matched = set[int]()
    pairs = list[tuple[int, int]]()
    # np.nonzero yields row-major order, which fixes the edge visiting order
    for u, v, draw in zip(rows.tolist(), cols.tolist(), draws.tolist()):
        if draw < probability and u not in matched and v not in matched:
            pairs.append((u, v))
            matched.update((u, v))
    return MatchingMatrix.from_groups(n, pairs)
