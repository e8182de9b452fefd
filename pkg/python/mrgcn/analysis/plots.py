"""Loss-curve and per-bucket accuracy plots, in the terminal or as PNG files."""

import logging
from collections.abc import Sequence
from pathlib import Path

import plotext
from analysis.buckets import DistanceReport
from matplotlib import pyplot
from training import EpochRecord

log = logging.getLogger(__name__)


class PlotEngine:

    def __init__(self, *, use_matplot: bool = False):
        self._plt = pyplot if use_matplot else plotext
        self._figure = None
        self._ax = None

    def _setup(self, title: str, x_axis: str, y_axis: str) -> None:
        self.clear()
        if self._plt is pyplot:
            self._figure, self._ax = pyplot.subplots()
            self._ax.set_title(title)
            self._ax.set_xlabel(x_axis)
            self._ax.set_ylabel(y_axis)
        else:
            plotext.title(title)
            plotext.xlabel(x_axis)
            plotext.ylabel(y_axis)

    def plot_loss_curve(self, curve: Sequence[EpochRecord]) -> None:
        self._setup("Training loss", "epoch", "loss")
        epochs = [record.epoch for record in curve]
        self._plot(epochs, [record.loss for record in curve], label="loss")
        self._plot(epochs, [record.dev_metric for record in curve], label="dev accuracy")
        self._finalize()

    def plot_report(self, report: DistanceReport) -> None:
        self._setup(f"Accuracy by {report.key.value}", report.key.value, "accuracy")
        labels, accuracies = [], []
        for bucket in report.buckets:
            low = "-inf" if bucket.lower is None else f"{bucket.lower:g}"
            high = "inf" if bucket.upper is None else f"{bucket.upper:g}"
            labels.append(f"[{low},{high})")
            accuracies.append(0.0 if bucket.accuracy is None else bucket.accuracy)
        if self._ax is not None:
            self._ax.bar(labels, accuracies)
        else:
            plotext.bar(labels, accuracies)
        self._finalize()

    def _plot(self, x_data: list[int], y_data: list[float], *, label: str) -> None:
        if self._ax is not None:
            self._ax.plot(x_data, y_data, label=label)
        else:
            plotext.plot(x_data, y_data, label=label)

    def _finalize(self) -> None:
        if self._ax is not None and self._ax.get_legend_handles_labels()[0]:
            self._ax.legend(loc="upper right")
        if self._figure is None:
            plotext.show()

    def savefig(self, out_dir: Path, name: str) -> Path:
        out_dir.mkdir(parents=True, exist_ok=True)
        if self._figure is not None:
            path = out_dir / f"{name}.png"
            self._figure.set_size_inches(12, 8)
            self._figure.savefig(str(path), dpi=100, bbox_inches="tight")
        else:
            path = out_dir / f"{name}.plt"
            plotext.save_fig(str(path), keep_colors=True)
        log.debug("wrote %s", path)
        return path

    def clear(self) -> None:
        if self._figure is not None:
            pyplot.close(self._figure)
        else:
            plotext.clear_figure()
        self._figure = None
        self._ax = None
