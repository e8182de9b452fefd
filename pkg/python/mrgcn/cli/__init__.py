import logging
import sys
import traceback
from pathlib import Path
from typing import Any

import click
from analysis import BucketEdgeError, BucketKey
from cli import pipeline
from cli.config import MrgcnConfig
from cli.manifest import RunManifest, input_hashes
from click_default_group import DefaultGroup
from coarsen import PoolingMethod
from gcn_model import CheckpointError
from ingest import IngestError
from mrgcn_config import DEFAULT_CONFIG_FILE, ConfigError, dump_yaml
from numeric import NumericError
from training import DatasetError, TrainingDivergedError
from typing_extensions import override

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_ARTIFACT = 4
EXIT_USAGE = 64

SEED_ENVVAR = "COARSEN_GNN_SEED"


class ExitCodeGroup(click.Group):
    """Maps pipeline errors onto the documented exit codes."""

    @override
    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):  # pyright: ignore[reportIncompatibleMethodOverride]
        if not standalone_mode:
            return super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        try:
            super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except IngestError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_PARSE)
        except (TrainingDivergedError, NumericError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_NUMERIC)
        except CheckpointError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_ARTIFACT)
        except (DatasetError, ConfigError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(EXIT_OK)


def _config(config_file: Path | None, overrides: dict[str, dict[str, Any]]) -> Any:
    """defaults < config file < flags; None flags are left to the layers below."""
    cleaned = {
        section: {k: v for k, v in values.items() if v is not None}
        for section, values in overrides.items()
    }
    try:
        return MrgcnConfig().merge_file(config_file).merge(cleaned)
    except TypeError as e:
        raise click.BadParameter(f"unknown configuration key: {e}", param_hint="--config-file") from e
    except ConfigError as e:
        raise click.BadParameter(str(e), param_hint="--config-file") from e


def _source(corpus: Path | None, synthetic: int | None, instances: int, vocab: int) -> pipeline.DataSource:
    if (corpus is None) == (synthetic is None):
        raise click.UsageError("give exactly one of --corpus or --synthetic")
    return pipeline.DataSource(corpus=corpus, chain_len=synthetic, instances=instances, vocab=vocab)


def _parse_edges(ctx: click.Context, param: click.Parameter, value: str) -> list[float]:
    try:
        return [float(edge) for edge in value.split(",") if edge.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from None


def _manifest(command: str, config: dict[str, Any], seed: int | None, inputs: list[Path], out_dir: Path) -> None:
    outputs = sorted(path.name for path in out_dir.iterdir() if path.name != "manifest.json")
    RunManifest(
        command=command,
        config=config,
        seed=seed,
        inputs=input_hashes(inputs),
        outputs=outputs,
    ).write(out_dir)
    click.echo(f"wrote {len(outputs)} files to {out_dir}")


config_file_option = click.option(
    "-c",
    "--config-file",
    "config_file",
    default=None,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="YAML overrides applied on top of the defaults.",
)
seed_option = click.option(
    "--seed",
    "seed",
    default=None,
    type=int,
    envvar=SEED_ENVVAR,
    help=f"Random seed; falls back to ${SEED_ENVVAR}.",
)
out_option = click.option(
    "-o",
    "--out",
    "out_dir",
    required=True,
    type=click.Path(file_okay=False, path_type=Path),
)
method_option = click.option(
    "--method",
    "method",
    default=None,
    type=click.Choice([method.value for method in PoolingMethod]),
)
jobs_option = click.option("--jobs", "jobs", default=1, type=click.IntRange(min=1))
plot_option = click.option("--plot", "plot", default=False, is_flag=True, type=bool)
matplot_option = click.option(
    "-m",
    "--matplot",
    "use_matplot",
    default=False,
    is_flag=True,
    type=bool,
    help="Use matplotlib to graph data",
)


def source_options(f):
    for decorator in reversed([
        click.option(
            "--corpus",
            "corpus",
            default=None,
            type=click.Path(exists=True, file_okay=False, path_type=Path),
            help="Directory of .conllu files with .json sidecars.",
        ),
        click.option(
            "--synthetic",
            "synthetic",
            default=None,
            type=click.IntRange(min=2),
            help="Chain length of generated long-dependency documents.",
        ),
        click.option("--instances", "instances", default=200, type=click.IntRange(min=1)),
        click.option("--vocab", "vocab", default=8, type=click.IntRange(min=2)),
    ]):
        f = decorator(f)
    return f


@click.group(cls=ExitCodeGroup)
@click.option("-v", "--verbose", "verbose", default=False, is_flag=True, type=bool)
def cli(verbose: bool):
    """Coarsen document graphs and train pooling-unpooling GCNs for relation extraction."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command("coarsen")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--sidecar",
    "sidecar",
    default=None,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Defaults to the .json next to the input.",
)
@method_option
@click.option("--levels", "levels", default=2, type=click.IntRange(min=0), help="Number of pooling steps K.")
@seed_option
@click.option("--passes", "passes", default=None, type=click.IntRange(min=1), help="Matching passes per level.")
@config_file_option
@out_option
def cli_coarsen(
    input_path: Path,
    sidecar: Path | None,
    method: str | None,
    levels: int,
    seed: int | None,
    passes: int | None,
    config_file: Path | None,
    out_dir: Path,
):
    """Build G_0..G_K for one document and write each level as DOT."""
    config = _config(config_file, {
        "coarsen_config": {"method": method, "seed": seed, "passes_per_level": passes},
    })
    cfg = config.coarsen_config
    pipeline.run_coarsen(input_path, sidecar, cfg, levels, out_dir)
    inputs = [input_path] if sidecar is None else [input_path, sidecar]
    _manifest("coarsen", {**cfg.to_dict(), "levels": levels}, cfg.seed, inputs, out_dir)


@cli.command("train")
@source_options
@method_option
@click.option("--levels", "levels", default=None, type=click.IntRange(min=1), help="Graphs in the hierarchy.")
@click.option("--sublayers", "sublayers", default=None, type=click.IntRange(min=1))
@click.option("--hidden", "hidden", default=None, type=click.IntRange(min=1))
@click.option("--lr", "lr", default=None, type=click.FloatRange(min=0.0))
@click.option("--epochs", "epochs", default=None, type=click.IntRange(min=1))
@click.option("--num-classes", "num_classes", default=None, type=click.IntRange(min=2))
@click.option("--anonymize/--no-anonymize", "anonymize", default=None)
@click.option(
    "--embeddings",
    "embeddings",
    default=None,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option("--dev-fraction", "dev_fraction", default=0.2, type=click.FloatRange(min=0.0, max=0.9))
@seed_option
@jobs_option
@plot_option
@matplot_option
@config_file_option
@out_option
def cli_train(
    corpus: Path | None,
    synthetic: int | None,
    instances: int,
    vocab: int,
    method: str | None,
    levels: int | None,
    sublayers: int | None,
    hidden: int | None,
    lr: float | None,
    epochs: int | None,
    num_classes: int | None,
    anonymize: bool | None,
    embeddings: Path | None,
    dev_fraction: float,
    seed: int | None,
    jobs: int,
    plot: bool,
    use_matplot: bool,
    config_file: Path | None,
    out_dir: Path,
):
    """Train on a corpus or synthetic chains; writes a checkpoint, metrics and the loss curve."""
    source = _source(corpus, synthetic, instances, vocab)
    config = _config(config_file, {
        "coarsen_config": {"method": method, "seed": seed},
        "model_config": {"levels": levels, "sublayers": sublayers, "hidden": hidden},
        "embedding_config": {
            "anonymize": anonymize,
            "embedding_file": str(embeddings) if embeddings is not None else None,
        },
        "train_config": {"lr": lr, "epochs": epochs, "seed": seed, "num_classes": num_classes},
    })
    pipeline.run_train(
        source,
        config,
        out_dir,
        dev_fraction=dev_fraction,
        jobs=jobs,
        plot=plot or use_matplot,
        use_matplot=use_matplot,
    )
    inputs = source.input_paths() + ([embeddings] if embeddings is not None else [])
    _manifest(
        "train",
        {**config.to_dict(), "source": source.describe(), "dev_fraction": dev_fraction},
        config.train_config.seed,
        inputs,
        out_dir,
    )


checkpoint_option = click.option(
    "--checkpoint",
    "checkpoint",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)


@cli.command("eval")
@source_options
@checkpoint_option
@seed_option
@jobs_option
@out_option
def cli_eval(
    corpus: Path | None,
    synthetic: int | None,
    instances: int,
    vocab: int,
    checkpoint: Path,
    seed: int | None,
    jobs: int,
    out_dir: Path,
):
    """Score a checkpoint; synthetic data is regenerated from --seed (default: the training seed)."""
    source = _source(corpus, synthetic, instances, vocab)
    pipeline.run_eval(source, checkpoint, out_dir, seed=seed, jobs=jobs)
    _manifest("eval", {"source": source.describe()}, seed, [*source.input_paths(), checkpoint], out_dir)


@cli.group("analyze", cls=DefaultGroup, default="buckets", default_if_no_args=True)
def cli_analyze():
    """Diagnostics: bucketed performance, coarsening statistics."""


@cli_analyze.command("buckets")
@source_options
@checkpoint_option
@click.option(
    "--bucket-by",
    "bucket_by",
    default=BucketKey.ENTITY_DISTANCE.value,
    type=click.Choice([key.value for key in BucketKey]),
)
@click.option(
    "--edges",
    "edges",
    default="",
    callback=_parse_edges,
    help="Comma-separated interior bucket edges, e.g. 4,8.",
)
@seed_option
@jobs_option
@plot_option
@matplot_option
@out_option
def cli_analyze_buckets(
    corpus: Path | None,
    synthetic: int | None,
    instances: int,
    vocab: int,
    checkpoint: Path,
    bucket_by: str,
    edges: list[float],
    seed: int | None,
    jobs: int,
    plot: bool,
    use_matplot: bool,
    out_dir: Path,
):
    """Per-bucket metrics of a checkpoint by entity distance or input length."""
    source = _source(corpus, synthetic, instances, vocab)
    try:
        pipeline.run_analyze_buckets(
            source,
            checkpoint,
            BucketKey(bucket_by),
            edges,
            out_dir,
            seed=seed,
            jobs=jobs,
            plot=plot or use_matplot,
            use_matplot=use_matplot,
        )
    except BucketEdgeError as e:
        raise click.BadParameter(str(e), param_hint="--edges") from e
    _manifest(
        "analyze buckets",
        {"source": source.describe(), "bucket_by": bucket_by, "edges": edges},
        seed,
        [*source.input_paths(), checkpoint],
        out_dir,
    )


@cli_analyze.command("stats")
@click.option(
    "--corpus",
    "corpus",
    default=Path("data/sample_corpus"),
    type=click.Path(exists=True, file_okay=False, path_type=Path),
)
@click.option("--levels", "levels", default=2, type=click.IntRange(min=0))
@click.option("--passes", "passes", default=None, type=click.IntRange(min=1))
@seed_option
@config_file_option
@out_option
def cli_analyze_stats(
    corpus: Path,
    levels: int,
    passes: int | None,
    seed: int | None,
    config_file: Path | None,
    out_dir: Path,
):
    """Mean graph size per level for every pooling method."""
    config = _config(config_file, {"coarsen_config": {"seed": seed, "passes_per_level": passes}})
    pipeline.run_analyze_stats(corpus, levels, config.coarsen_config, out_dir)
    _manifest(
        "analyze stats",
        {**config.coarsen_config.to_dict(), "levels": levels},
        config.coarsen_config.seed,
        [corpus],
        out_dir,
    )


@cli_analyze.command("long-dependency")
@click.option("--chain-len", "chain_len", default=32, type=click.IntRange(min=2))
@click.option("--instances", "instances", default=1600, type=click.IntRange(min=8))
@click.option("--vocab", "vocab", default=2, type=click.IntRange(min=2), help="Words w0..w{N-1}; w{i} has class i % 2.")
@click.option("--seeds", "seeds", default=5, type=click.IntRange(min=1), help="Runs with seeds 0..N-1.")
@click.option("--epochs", "epochs", default=None, type=click.IntRange(min=1))
@method_option
@config_file_option
@out_option
def cli_analyze_long_dependency(
    chain_len: int,
    instances: int,
    vocab: int,
    seeds: int,
    epochs: int | None,
    method: str | None,
    config_file: Path | None,
    out_dir: Path,
):
    """Pooling-unpooling model against a plain GCN of the same depth on synthetic chains."""
    config = _config(config_file, {
        "coarsen_config": {"method": method},
        "train_config": {"epochs": epochs},
    })
    comparison = pipeline.run_long_dependency(
        config, out_dir, chain_len=chain_len, instances=instances, vocab=vocab, seeds=range(seeds)
    )
    click.echo(
        f"pooled {comparison.pooled_median:.3f} plain {comparison.plain_median:.3f} margin {comparison.margin:+.3f}"
    )
    _manifest(
        "analyze long-dependency",
        {**config.to_dict(), "chain_len": chain_len, "instances": instances, "vocab": vocab, "seeds": seeds},
        None,
        [],
        out_dir,
    )


@cli.command("defaults")
@click.option(
    "-o",
    "--out",
    "out_path",
    default=DEFAULT_CONFIG_FILE,
    type=click.Path(dir_okay=False, path_type=Path),
)
def cli_defaults(out_path: Path):
    """Output the default configuration into a yaml file, defaults.yaml unless --out is given."""
    out_path.write_text(dump_yaml(MrgcnConfig()))


def main():
    try:
        cli.main(prog_name="mrgcn")
    except Exception:
        print(traceback.format_exc())
        sys.exit(1)
