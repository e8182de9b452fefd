"""Entity distance, bucketed performance and coarsening statistics."""

from analysis.buckets import (
    Bucket,
    BucketKey,
    DistanceReport,
    bucket_bounds,
    bucket_report,
    bucket_value,
    example_entity_distance,
    report_dat,
    report_frame,
    write_report,
)
from analysis.distance import Distance, entity_distance, mention_pair_distance
from analysis.errors import AnalysisError, BucketEdgeError
from analysis.experiment import (
    LongDependencyComparison,
    LongDependencyRun,
    compare_long_dependency,
    plain_equivalent,
)
from analysis.plots import PlotEngine
from analysis.stats import coarsening_stats, coarsening_stats_frame

__all__ = [
    "AnalysisError",
    "Bucket",
    "BucketEdgeError",
    "BucketKey",
    "Distance",
    "DistanceReport",
    "LongDependencyComparison",
    "LongDependencyRun",
    "PlotEngine",
    "bucket_bounds",
    "bucket_report",
    "bucket_value",
    "coarsening_stats",
    "coarsening_stats_frame",
    "compare_long_dependency",
    "entity_distance",
    "example_entity_distance",
    "mention_pair_distance",
    "plain_equivalent",
    "report_dat",
    "report_frame",
    "write_report",
]
