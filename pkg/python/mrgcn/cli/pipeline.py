"""Command bodies: load inputs, run the pipeline, write outputs."""

import json
import logging
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import analysis
import coarsen
import training
from cli.config import MrgcnConfig
from gcn_model import CheckpointError, load_checkpoint, restore_parameters, save_checkpoint
from ingest import CorpusDocument, EmbeddingTable, load_corpus, load_document

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DataSource:
    """A corpus directory, or synthetic chain documents when chain_len is set."""

    corpus: Path | None = None
    chain_len: int | None = None
    instances: int = 200
    vocab: int = 8

    def load(self, seed: int) -> list[CorpusDocument]:
        if self.chain_len is not None:
            return training.synth_long_dep(self.instances, self.chain_len, self.vocab, seed)
        assert self.corpus is not None
        return load_corpus(self.corpus)

    def input_paths(self) -> list[Path]:
        return [self.corpus] if self.corpus is not None else []

    def describe(self) -> dict[str, Any]:
        return {
            "corpus": str(self.corpus) if self.corpus is not None else None,
            "chain_len": self.chain_len,
            "instances": self.instances,
            "vocab": self.vocab,
        }


def _write_json(path: Path, payload: Any) -> Path:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def run_coarsen(
    input_path: Path,
    sidecar_path: Path | None,
    cfg: coarsen.CoarsenConfig,
    levels: int,
    out_dir: Path,
) -> list[Path]:
    doc = load_document(input_path, sidecar_path)
    hierarchy = coarsen.build_hierarchy(doc.graph(), levels, cfg)
    labels = [token.form for token in doc.document.tokens()]
    out_dir.mkdir(parents=True, exist_ok=True)
    written = list[Path]()
    for level in range(len(hierarchy.levels)):
        path = out_dir / f"level_{level}.dot"
        path.write_text(coarsen.level_to_dot(hierarchy, level, labels))
        written.append(path)
    merge_tree = out_dir / "merge_tree.dot"
    merge_tree.write_text(coarsen.merge_tree_to_dot(hierarchy, labels))
    written.append(merge_tree)
    written.append(_write_json(out_dir / "stats.json", {
        "doc_id": doc.doc_id,
        "method": hierarchy.method.value,
        "levels": levels,
        "passes_per_level": cfg.passes_per_level,
        "sizes": hierarchy.sizes(),
        "stopped_early": hierarchy.stopped_early,
    }))
    for path in written:
        log.debug("wrote %s", path)
    return written


def _prepare(
    documents: Sequence[CorpusDocument],
    config: Any,
    table: EmbeddingTable,
    jobs: int,
) -> list[training.PreparedExample]:
    return training.prepare_examples(
        documents,
        table,
        levels=config.model_config.levels,
        coarsen=config.coarsen_config,
        anonymize_entities=config.embedding_config.anonymize,
        num_classes=config.train_config.num_classes,
        jobs=jobs,
    )


def run_train(
    source: DataSource,
    config: Any,
    out_dir: Path,
    *,
    dev_fraction: float = 0.2,
    jobs: int = 1,
    plot: bool = False,
    use_matplot: bool = False,
) -> training.TrainResult:
    train_cfg: training.TrainConfig = config.train_config
    documents = source.load(train_cfg.seed)
    train_docs, dev_docs = training.split_documents(documents, dev_fraction, train_cfg.seed)
    table = config.embedding_config.table()
    train_set = _prepare(train_docs, config, table, jobs)
    dev_set = _prepare(dev_docs, config, table, jobs)
    entity_count = training.entity_count(train_set)
    model = training.RelationModel.create(
        config.model_config,
        in_dim=table.width,
        entity_count=entity_count,
        num_classes=train_cfg.num_classes,
        seed=train_cfg.seed,
    )
    result = training.train(model, train_set, train_cfg, dev_set)

    out_dir.mkdir(parents=True, exist_ok=True)
    save_checkpoint(
        out_dir / "model.ckpt",
        {
            "config": config.to_dict(),
            "in_dim": table.width,
            "entity_count": entity_count,
            "best_epoch": result.best_epoch,
        },
        model.parameters(),
    )
    training.write_metrics(out_dir / "metrics.json", result.metrics)
    training.write_loss_curve(out_dir / "loss.csv", result.curve)
    if plot:
        engine = analysis.PlotEngine(use_matplot=use_matplot)
        engine.plot_loss_curve(result.curve)
        engine.savefig(out_dir, "loss")
        engine.clear()
    log.info("trained on %d examples, best epoch %d", len(train_set), result.best_epoch)
    return result


def load_model(checkpoint: Path) -> tuple[Any, training.RelationModel, EmbeddingTable]:
    header, arrays = load_checkpoint(checkpoint)
    try:
        config = MrgcnConfig().merge(header["config"])
        in_dim = int(header["in_dim"])
        entity_count = int(header["entity_count"])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"checkpoint {checkpoint} has an invalid header: {e!r}") from e
    table = config.embedding_config.table()
    if table.width != in_dim:
        raise CheckpointError(f"checkpoint expects {in_dim}-wide features, embeddings give {table.width}")
    model = training.RelationModel.create(
        config.model_config,
        in_dim=in_dim,
        entity_count=entity_count,
        num_classes=config.train_config.num_classes,
        seed=config.train_config.seed,
    )
    restore_parameters(model.parameters(), header, arrays)
    return config, model, table


def _checkpoint_examples(
    source: DataSource, checkpoint: Path, seed: int | None, jobs: int
) -> tuple[Any, training.RelationModel, list[training.PreparedExample]]:
    config, model, table = load_model(checkpoint)
    documents = source.load(config.train_config.seed if seed is None else seed)
    examples = _prepare(documents, config, table, jobs)
    if training.entity_count(examples) != model.head.entity_count:
        raise CheckpointError(f"checkpoint scores {model.head.entity_count}-entity instances")
    return config, model, examples


def run_eval(
    source: DataSource, checkpoint: Path, out_dir: Path, *, seed: int | None = None, jobs: int = 1
) -> training.Metrics:
    config, model, examples = _checkpoint_examples(source, checkpoint, seed, jobs)
    metrics = training.evaluate(model, examples, config.train_config.num_classes)
    out_dir.mkdir(parents=True, exist_ok=True)
    training.write_metrics(out_dir / "metrics.json", metrics)
    return metrics


def run_analyze_buckets(
    source: DataSource,
    checkpoint: Path,
    key: analysis.BucketKey,
    edges: Sequence[float],
    out_dir: Path,
    *,
    seed: int | None = None,
    jobs: int = 1,
    plot: bool = False,
    use_matplot: bool = False,
) -> tuple[analysis.DistanceReport, list[Path]]:
    config, model, examples = _checkpoint_examples(source, checkpoint, seed, jobs)
    predictions = training.predict_all(model, examples)
    report = analysis.bucket_report(examples, predictions, key, edges, config.train_config.num_classes)
    written = analysis.write_report(out_dir, report)
    if plot:
        engine = analysis.PlotEngine(use_matplot=use_matplot)
        engine.plot_report(report)
        written.append(engine.savefig(out_dir, f"report_{key.value}"))
        engine.clear()
    return report, written


def run_analyze_stats(
    corpus: Path, levels: int, cfg: coarsen.CoarsenConfig, out_dir: Path
) -> Path:
    documents = load_corpus(corpus)
    frame = analysis.coarsening_stats_frame(documents, levels, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "coarsening_stats.csv"
    frame.write_csv(path)
    return path


def run_long_dependency(
    config: Any,
    out_dir: Path,
    *,
    chain_len: int,
    instances: int,
    vocab: int,
    seeds: Sequence[int],
) -> analysis.LongDependencyComparison:
    """A quarter of the instances is the test split and an eighth the dev split."""
    n_test, n_dev = max(1, instances // 4), max(1, instances // 8)
    comparison = analysis.compare_long_dependency(
        chain_len=chain_len,
        n_train=instances - n_test - n_dev,
        n_dev=n_dev,
        n_test=n_test,
        vocab=vocab,
        seeds=seeds,
        model=config.model_config,
        coarsen=config.coarsen_config,
        train_cfg=config.train_config,
        word_dim=config.embedding_config.word_dim,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(out_dir / "long_dependency.json", {
        "chain_len": comparison.chain_len,
        "runs": [asdict(run) for run in comparison.runs],
        "pooled_median": comparison.pooled_median,
        "plain_median": comparison.plain_median,
        "margin": comparison.margin,
    })
    return comparison
