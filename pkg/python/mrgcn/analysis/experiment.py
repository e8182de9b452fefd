"""Pooling-unpooling GCN against a plain GCN of equal depth on the synthetic chain task."""

import logging
import statistics
from collections.abc import Sequence
from dataclasses import dataclass, replace

from coarsen import CoarsenConfig
from gcn_model import ModelConfig
from ingest import CorpusDocument, EmbeddingTable
from training import DatasetError, RelationModel, TrainConfig, evaluate, prepare_examples, synth_long_dep, train

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LongDependencyRun:
    seed: int
    pooled_accuracy: float
    plain_accuracy: float


@dataclass(frozen=True)
class LongDependencyComparison:
    chain_len: int
    runs: tuple[LongDependencyRun, ...]

    @property
    def pooled_median(self) -> float:
        return statistics.median(run.pooled_accuracy for run in self.runs)

    @property
    def plain_median(self) -> float:
        return statistics.median(run.plain_accuracy for run in self.runs)

    @property
    def margin(self) -> float:
        return self.pooled_median - self.plain_median


def plain_equivalent(config: ModelConfig) -> ModelConfig:
    """Single-level model with the same total number of GCN layers."""
    return ModelConfig(
        levels=1,
        sublayers=config.layer_count(),
        hidden=config.hidden,
        head_hidden=config.head_hidden,
        pool_mode=config.pool_mode,
        dropout=config.dropout,
    )


def _accuracy(
    model_cfg: ModelConfig,
    splits: tuple[Sequence[CorpusDocument], Sequence[CorpusDocument], Sequence[CorpusDocument]],
    table: EmbeddingTable,
    coarsen: CoarsenConfig,
    train_cfg: TrainConfig,
) -> float:
    """Trains on the first split, selects the epoch on the second, scores the third."""
    train_set, dev_set, test_set = (
        prepare_examples(docs, table, levels=model_cfg.levels, coarsen=coarsen, num_classes=2) for docs in splits
    )
    model = RelationModel.create(
        model_cfg,
        in_dim=table.width,
        entity_count=2,
        num_classes=2,
        seed=train_cfg.seed,
    )
    train(model, train_set, train_cfg, dev_set)
    return evaluate(model, test_set, 2).accuracy


def compare_long_dependency(
    *,
    chain_len: int = 32,
    n_train: int = 1000,
    n_dev: int = 200,
    n_test: int = 400,
    vocab: int = 2,
    seeds: Sequence[int] = (0, 1, 2, 3, 4),
    model: ModelConfig = ModelConfig(),
    coarsen: CoarsenConfig = CoarsenConfig(),
    train_cfg: TrainConfig = TrainConfig(),
    word_dim: int = 16,
) -> LongDependencyComparison:
    """Both models train, select and score on the same three splits for every seed."""
    if min(n_train, n_dev, n_test) < 1:
        raise DatasetError(f"every split needs an instance, got {n_train}/{n_dev}/{n_test}")
    table = EmbeddingTable.hashed(word_dim)
    runs = list[LongDependencyRun]()
    for seed in seeds:
        documents = synth_long_dep(n_train + n_dev + n_test, chain_len, vocab, seed)
        splits = (documents[:n_train], documents[n_train:n_train + n_dev], documents[n_train + n_dev:])
        seeded = replace(train_cfg, seed=seed, num_classes=2)
        run = LongDependencyRun(
            seed=seed,
            pooled_accuracy=_accuracy(model, splits, table, coarsen, seeded),
            plain_accuracy=_accuracy(plain_equivalent(model), splits, table, coarsen, seeded),
        )
        log.info("seed %d pooled %.3f plain %.3f", seed, run.pooled_accuracy, run.plain_accuracy)
        runs.append(run)
    return LongDependencyComparison(chain_len=chain_len, runs=tuple(runs))
