import json
from collections.abc import Sequence
from dataclasses import asdict
from pathlib import Path

import polars as pl
from training.metrics import Metrics
from training.trainer import EpochRecord


def write_metrics(path: Path, metrics: Metrics) -> None:
    path.write_text(json.dumps(metrics.to_dict(), indent=2, sort_keys=True) + "\n")


def loss_curve_frame(curve: Sequence[EpochRecord]) -> pl.DataFrame:
    return pl.DataFrame(
        [asdict(record) for record in curve],
        schema={"epoch": pl.Int64, "loss": pl.Float64, "dev_metric": pl.Float64},
    )


def write_loss_curve(path: Path, curve: Sequence[EpochRecord]) -> None:
    loss_curve_frame(curve).write_csv(path)
