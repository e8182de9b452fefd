"""Per-instance SGD over the pooling-unpooling GCN and relation head."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from gcn_model import ModelConfig, MrGcnModel, glorot_uniform, mrgcn_forward
from numeric import (
    Matrix,
    Node,
    NonFiniteError,
    Parameter,
    backward,
    clip_grad_norm,
    constant,
    decayed_lr,
    sgd_step,
)
from re_head import PairScorer, predict, score_instance
from training.config import TrainConfig
from training.dataset import PreparedExample, entity_count
from training.errors import DatasetError, TrainingDivergedError
from training.loss import cross_entropy
from training.metrics import Metrics, compute_metrics

log = logging.getLogger(__name__)


@dataclass(eq=False)
class RelationModel:
    encoder: MrGcnModel
    head: PairScorer
    config: ModelConfig

    @classmethod
    def create(cls, config: ModelConfig, *, in_dim: int, entity_count: int, num_classes: int, seed: int) -> "RelationModel":
        encoder = MrGcnModel(in_dim=in_dim, hidden=config.hidden, levels=config.levels, sublayers=config.sublayers)
        head = PairScorer.create(
            entity_count=entity_count,
            d=config.hidden,
            d_h=config.head_width(),
            num_classes=num_classes,
        )
        model = RelationModel(encoder=encoder, head=head, config=config)
        glorot_uniform(model.parameters(), np.random.default_rng(seed))
        return model

    def parameters(self) -> list[Parameter]:
        return [*self.encoder.parameters(), *self.head.parameters()]

    def logits(self, example: PreparedExample, rng: np.random.Generator | None = None) -> Node:
        """rng enables dropout; evaluation passes None."""
        h, _ = mrgcn_forward(
            self.encoder,
            example.hierarchy,
            constant(example.features),
            pool_mode=self.config.pool_mode,
            dropout=self.config.dropout if rng is not None else 0.0,
            rng=rng,
        )
        return score_instance(self.head, example.instance, h)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    loss: float
    dev_metric: float


@dataclass
class TrainResult:
    metrics: Metrics
    best_epoch: int
    curve: list[EpochRecord] = field(default_factory=list)


def predict_all(model: RelationModel, examples: Sequence[PreparedExample]) -> list[int]:
    return [predict(model.logits(example)) for example in examples]


def evaluate(model: RelationModel, examples: Sequence[PreparedExample], num_classes: int) -> Metrics:
    return compute_metrics([example.label for example in examples], predict_all(model, examples), num_classes)


def _snapshot(params: Sequence[Parameter]) -> list[Matrix]:
    return [param.value.copy() for param in params]


def train_epoch(
    model: RelationModel,
    examples: Sequence[PreparedExample],
    lr: float,
    epoch: int,
    rng: np.random.Generator,
    gradient_clip: float = 0.0,
) -> float:
    """One pass over examples in dataset order; rng only drives dropout."""
    params = model.parameters()
    total = 0.0
    for example in examples:
        try:
            logits = model.logits(example, rng)
        except NonFiniteError as e:
            raise TrainingDivergedError(f"non-finite forward pass on {example.doc_id}: {e}", epoch) from e
        loss, grad = cross_entropy(logits.value, example.label)
        if not math.isfinite(loss):
            raise TrainingDivergedError(f"non-finite loss on {example.doc_id}", epoch)
        backward(logits, grad)
        clip_grad_norm(params, gradient_clip)
        sgd_step(params, lr)
        total += loss
    return total / len(examples)


def train(
    model: RelationModel,
    train_set: Sequence[PreparedExample],
    cfg: TrainConfig,
    dev_set: Sequence[PreparedExample] = (),
) -> TrainResult:
    """Runs cfg.epochs epochs and leaves the model holding its best-dev parameters.

    Without a dev set the training set is scored instead; ties keep the earlier epoch.
    """
    if entity_count(train_set) != model.head.entity_count:
        raise DatasetError(f"head scores {model.head.entity_count} entities, dataset has {entity_count(train_set)}")
    selection_set = dev_set or train_set
    rng = np.random.default_rng(cfg.seed)
    params = model.parameters()
    best_metrics = evaluate(model, selection_set, cfg.num_classes)
    best_score, best_epoch, best_values = best_metrics.accuracy, 0, _snapshot(params)
    curve = list[EpochRecord]()
    for epoch in range(1, cfg.epochs + 1):
        lr = decayed_lr(epoch, cfg.lr, cfg.lr_decay, cfg.decay_start_epoch)
        loss = train_epoch(model, train_set, lr, epoch, rng, cfg.gradient_clip)
        metrics = evaluate(model, selection_set, cfg.num_classes)
        score = metrics.accuracy
        curve.append(EpochRecord(epoch=epoch, loss=loss, dev_metric=score))
        log.info("epoch %d lr %.4f loss %.4f dev %.4f", epoch, lr, loss, score)
        if score > best_score:
            best_score, best_epoch, best_metrics, best_values = score, epoch, metrics, _snapshot(params)
    for param, value in zip(params, best_values):
        param.assign(value)
    log.info("best epoch %d dev %.4f", best_epoch, best_score)
    return TrainResult(metrics=best_metrics, best_epoch=best_epoch, curve=curve)
