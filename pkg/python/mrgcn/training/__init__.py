"""Dataset preparation, SGD training and evaluation for relation extraction."""

from training.config import EmbeddingConfig, TrainConfig
from training.dataset import (
    PreparedExample,
    collapse_to_detection,
    entity_count,
    prepare_examples,
    split_documents,
    synth_long_dep,
)
from training.errors import DatasetError, TrainingDivergedError, TrainingError
from training.loss import cross_entropy
from training.metrics import ClassMetrics, Metrics, compute_metrics
from training.report import loss_curve_frame, write_loss_curve, write_metrics
from training.trainer import (
    EpochRecord,
    RelationModel,
    TrainResult,
    evaluate,
    predict_all,
    train,
    train_epoch,
)

__all__ = [
    "ClassMetrics",
    "DatasetError",
    "EmbeddingConfig",
    "EpochRecord",
    "Metrics",
    "PreparedExample",
    "RelationModel",
    "TrainConfig",
    "TrainResult",
    "TrainingDivergedError",
    "TrainingError",
    "collapse_to_detection",
    "compute_metrics",
    "cross_entropy",
    "entity_count",
    "evaluate",
    "loss_curve_frame",
    "predict_all",
    "prepare_examples",
    "split_documents",
    "synth_long_dep",
    "train",
    "train_epoch",
    "write_loss_curve",
    "write_metrics",
]
