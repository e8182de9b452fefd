"""Confusion-matrix metrics."""

from collections.abc import Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True)
class ClassMetrics:
    label: int
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    count: int
    per_class: tuple[ClassMetrics, ...]
    # micro-F1 over every class but 0 ("no relation"); the positive-class F1 when binary
    micro_f1: float
    confusion: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


def _f1(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


def compute_metrics(gold: Sequence[int], predicted: Sequence[int], num_classes: int) -> Metrics:
    assert len(gold) == len(predicted)
    confusion = np.zeros((num_classes, num_classes), dtype=np.int64)
    for g, p in zip(gold, predicted):
        confusion[g, p] += 1
    per_class = list[ClassMetrics]()
    for c in range(num_classes):
        tp = int(confusion[c, c])
        precision = _ratio(tp, int(confusion[:, c].sum()))
        recall = _ratio(tp, int(confusion[c, :].sum()))
        per_class.append(ClassMetrics(
            label=c,
            precision=precision,
            recall=recall,
            f1=_f1(precision, recall),
            support=int(confusion[c, :].sum()),
        ))
    positive_tp = int(np.trace(confusion[1:, 1:])) if num_classes > 1 else 0
    positive_precision = _ratio(positive_tp, int(confusion[:, 1:].sum()))
    positive_recall = _ratio(positive_tp, int(confusion[1:, :].sum()))
    return Metrics(
        accuracy=_ratio(int(np.trace(confusion)), len(gold)),
        count=len(gold),
        per_class=tuple(per_class),
        micro_f1=_f1(positive_precision, positive_recall),
        confusion=tuple(tuple(int(x) for x in row) for row in confusion),
    )
