import logging
from collections.abc import Sequence
from dataclasses import replace

import numpy as np
import polars as pl
from coarsen import CoarsenConfig, PoolingMethod, build_hierarchy
from ingest import CorpusDocument

log = logging.getLogger(__name__)


def coarsening_stats(
    documents: Sequence[CorpusDocument],
    method: PoolingMethod,
    levels: int,
    cfg: CoarsenConfig = CoarsenConfig(),
) -> list[float]:
    """Mean node count of G_0..G_levels over the corpus."""
    if not documents:
        return [0.0] * (levels + 1)
    cfg = replace(cfg, method=method.value)
    sizes = np.array(
        [build_hierarchy(doc.graph(), levels, cfg).sizes() for doc in documents],
        dtype=np.float64,
    )
    means = sizes.mean(axis=0).tolist()
    log.debug("%s mean sizes %s", method.value, means)
    return means


def coarsening_stats_frame(
    documents: Sequence[CorpusDocument],
    levels: int,
    cfg: CoarsenConfig = CoarsenConfig(),
    methods: Sequence[PoolingMethod] = tuple(PoolingMethod),
) -> pl.DataFrame:
    rows = [
        {"method": method.value, "level": level, "mean_nodes": mean}
        for method in methods
        for level, mean in enumerate(coarsening_stats(documents, method, levels, cfg))
    ]
    return pl.DataFrame(rows, schema={"method": pl.String, "level": pl.Int64, "mean_nodes": pl.Float64})
