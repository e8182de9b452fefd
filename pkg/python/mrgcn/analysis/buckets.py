"""Per-bucket metrics keyed by entity distance or input length."""

import bisect
import json
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

import polars as pl
from analysis.distance import Distance, entity_distance
from analysis.errors import BucketEdgeError
from graph_core import UNREACHABLE
from training import Metrics, PreparedExample, compute_metrics

log = logging.getLogger(__name__)


class BucketKey(Enum):
    ENTITY_DISTANCE = "distance"
    INPUT_LENGTH = "length"


def example_entity_distance(example: PreparedExample) -> Distance:
    return entity_distance(example.hierarchy.adjacency(0), example.instance.entities)


def bucket_value(example: PreparedExample, key: BucketKey) -> Distance:
    match key:
        case BucketKey.ENTITY_DISTANCE:
            return example_entity_distance(example)
        case BucketKey.INPUT_LENGTH:
            return float(example.input_length)


@dataclass(frozen=True)
class Bucket:
    # half-open [lower, upper); None is unbounded
    lower: float | None
    upper: float | None
    count: int
    # None when the bucket is empty
    metrics: Metrics | None

    @property
    def accuracy(self) -> float | None:
        return self.metrics.accuracy if self.metrics is not None else None


@dataclass(frozen=True)
class DistanceReport:
    key: BucketKey
    edges: tuple[float, ...]
    # per instance, in input order; None marks unreachable
    values: tuple[float | None, ...]
    buckets: tuple[Bucket, ...]
    unreachable: Bucket

    @property
    def total(self) -> int:
        return sum(bucket.count for bucket in self.buckets) + self.unreachable.count

    def to_dict(self) -> dict[str, Any]:
        def bucket_dict(bucket: Bucket) -> dict[str, Any]:
            return {
                "lower": bucket.lower,
                "upper": bucket.upper,
                "count": bucket.count,
                "metrics": bucket.metrics.to_dict() if bucket.metrics is not None else None,
            }

        return {
            "key": self.key.value,
            "edges": list(self.edges),
            "values": list(self.values),
            "buckets": [bucket_dict(bucket) for bucket in self.buckets],
            "unreachable": bucket_dict(self.unreachable),
        }


def bucket_bounds(edges: Sequence[float]) -> list[tuple[float | None, float | None]]:
    """k interior edges give k + 1 buckets; no edges gives one bucket over everything."""
    for low, high in zip(edges, edges[1:]):
        if not low < high:
            raise BucketEdgeError(f"bucket edges must be strictly increasing, got {list(edges)}")
    bounds: list[float | None] = [None, *edges, None]
    return list(zip(bounds, bounds[1:]))


def bucket_report(
    examples: Sequence[PreparedExample],
    predictions: Sequence[int],
    key: BucketKey,
    edges: Sequence[float],
    num_classes: int,
) -> DistanceReport:
    assert len(examples) == len(predictions)
    bounds = bucket_bounds(edges)
    members: list[list[int]] = [[] for _ in bounds]
    unreachable = list[int]()
    values = list[float | None]()
    for i, example in enumerate(examples):
        value = bucket_value(example, key)
        if value is UNREACHABLE:
            values.append(None)
            unreachable.append(i)
            continue
        values.append(value)
        members[bisect.bisect_right(edges, value)].append(i)

    def make_bucket(lower: float | None, upper: float | None, indices: list[int]) -> Bucket:
        metrics = None
        if indices:
            metrics = compute_metrics(
                [examples[i].label for i in indices], [predictions[i] for i in indices], num_classes
            )
        return Bucket(lower=lower, upper=upper, count=len(indices), metrics=metrics)

    report = DistanceReport(
        key=key,
        edges=tuple(float(edge) for edge in edges),
        values=tuple(values),
        buckets=tuple(make_bucket(low, high, indices) for (low, high), indices in zip(bounds, members)),
        unreachable=make_bucket(None, None, unreachable),
    )
    log.debug("%s buckets %s, %d unreachable", key.value, [b.count for b in report.buckets], len(unreachable))
    return report


def report_frame(report: DistanceReport) -> pl.DataFrame:
    return pl.DataFrame(
        {
            "lower": [bucket.lower for bucket in report.buckets],
            "upper": [bucket.upper for bucket in report.buckets],
            "count": [bucket.count for bucket in report.buckets],
            "accuracy": [bucket.accuracy for bucket in report.buckets],
        },
        schema={"lower": pl.Float64, "upper": pl.Float64, "count": pl.Int64, "accuracy": pl.Float64},
    )


def _dat_bound(value: float | None, default: float) -> str:
    bound = default if value is None else value
    return "inf" if math.isinf(bound) and bound > 0 else "-inf" if math.isinf(bound) else f"{bound:g}"


def report_dat(report: DistanceReport) -> str:
    """gnuplot data: one `lower upper count accuracy` row per bucket; empty buckets get NaN accuracy."""
    lines = [f"# {report.key.value} lower upper count accuracy"]
    for bucket in report.buckets:
        accuracy = "NaN" if bucket.accuracy is None else f"{bucket.accuracy:.6f}"
        lines.append(
            f"{_dat_bound(bucket.lower, -math.inf)} {_dat_bound(bucket.upper, math.inf)} {bucket.count} {accuracy}"
        )
    return "\n".join(lines) + "\n"


def write_report(out_dir: Path, report: DistanceReport) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"report_{report.key.value}"
    json_path = out_dir / f"{stem}.json"
    csv_path = out_dir / f"{stem}.csv"
    dat_path = out_dir / f"{stem}.dat"
    json_path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    report_frame(report).write_csv(csv_path)
    dat_path.write_text(report_dat(report))
    return [json_path, csv_path, dat_path]
