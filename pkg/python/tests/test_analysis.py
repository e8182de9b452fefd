import json
import time

import polars as pl
import pytest
from analysis import (
    AnalysisError,
    BucketEdgeError,
    BucketKey,
    PlotEngine,
    bucket_bounds,
    bucket_report,
    coarsening_stats,
    coarsening_stats_frame,
    compare_long_dependency,
    entity_distance,
    mention_pair_distance,
    plain_equivalent,
    write_report,
)
from coarsen import CoarsenConfig, PoolingMethod
from conftest import random_adjacency, undirected
from gcn_model import ModelConfig
from graph_core import UNREACHABLE, adjacency
from hypothesis import given
from hypothesis import strategies as st
from ingest import EmbeddingTable, EntityCluster, MentionSpan
from training import DatasetError, TrainConfig, compute_metrics, prepare_examples, synth_long_dep

TABLE = EmbeddingTable.hashed(8)


def cluster(name: str, *spans: tuple[int, int]) -> EntityCluster:
    return EntityCluster(name, tuple(MentionSpan(start, end, name) for start, end in spans))


def chain_examples(n: int, chain_len: int, seed: int = 0):
    return prepare_examples(
        synth_long_dep(n, chain_len, vocab=6, seed=seed), TABLE, levels=2, coarsen=CoarsenConfig()
    )


@pytest.mark.parametrize(
    ("first", "second", "expected"),
    [((0, 1), (3, 4), 3.0), ((0, 1), (2, 4), 2.5), ((1, 2), (1, 2), 0.0)],
)
def test_mention_pair_distance(p4, first, second, expected):
    assert mention_pair_distance(p4, MentionSpan(*first, "a"), MentionSpan(*second, "b")) == expected


def test_mention_beyond_graph(p4):
    with pytest.raises(AnalysisError):
        mention_pair_distance(p4, MentionSpan(0, 1, "a"), MentionSpan(3, 6, "b"))


def test_entity_distance_takes_closest_mention(p4):
    assert entity_distance(p4, [cluster("a", (0, 1)), cluster("b", (3, 4))]) == 3.0
    assert entity_distance(p4, [cluster("a", (0, 1), (2, 3)), cluster("b", (3, 4))]) == 1.0


def test_entity_distance_takes_farthest_pair(p4):
    assert entity_distance(p4, [cluster("a", (0, 1)), cluster("b", (1, 2)), cluster("c", (3, 4))]) == 3.0


@given(st.permutations([(0, 1), (1, 2), (2, 3), (3, 4)]))
def test_entity_distance_ignores_cluster_order(spans):
    a = adjacency(undirected(4, [(0, 1), (1, 2), (2, 3)]))
    clusters = [cluster(f"e{i}", span) for i, span in enumerate(spans)]
    assert entity_distance(a, clusters) == 3.0


def test_unreachable_entities():
    a = adjacency(undirected(4, [(0, 1), (2, 3)]))
    assert entity_distance(a, [cluster("a", (0, 1)), cluster("b", (3, 4))]) is UNREACHABLE
    assert entity_distance(a, [cluster("a", (0, 1)), cluster("b", (1, 2), (3, 4))]) == 1.0


def test_entity_distance_needs_two_entities(p4):
    with pytest.raises(AnalysisError):
        entity_distance(p4, [cluster("a", (0, 1))])


def test_identity_coarsening_keeps_sizes(sample_corpus):
    assert coarsening_stats(sample_corpus, PoolingMethod.IDENTITY, 3) == [6.0] * 4


def test_clause_matching_coarsens_further_than_heavy_edge(sample_corpus):
    assert coarsening_stats(sample_corpus, PoolingMethod.CM, 1) == [6.0, 2.5]
    assert coarsening_stats(sample_corpus, PoolingMethod.HM, 1) == [6.0, 3.5]


def test_stats_of_an_empty_corpus():
    assert coarsening_stats([], PoolingMethod.HM, 2) == [0.0, 0.0, 0.0]


def test_stats_frame(sample_corpus):
    frame = coarsening_stats_frame(sample_corpus, 1, methods=[PoolingMethod.HM, PoolingMethod.CM])
    assert frame.columns == ["method", "level", "mean_nodes"]
    assert frame.filter(pl.col("level") == 1)["mean_nodes"].to_list() == [3.5, 2.5]


def test_bucket_bounds():
    assert bucket_bounds([]) == [(None, None)]
    assert bucket_bounds([2.0, 5.0]) == [(None, 2.0), (2.0, 5.0), (5.0, None)]
    with pytest.raises(BucketEdgeError):
        bucket_bounds([5.0, 5.0])
    with pytest.raises(BucketEdgeError):
        bucket_bounds([5.0, 2.0])


def test_single_bucket_matches_global_metrics():
    examples = chain_examples(6, 4)
    predictions = [0, 1, 1, 0, 0, 1]
    report = bucket_report(examples, predictions, BucketKey.ENTITY_DISTANCE, [], 2)
    (bucket,) = report.buckets
    assert bucket.metrics == compute_metrics([e.label for e in examples], predictions, 2)
    assert report.total == 6
    assert report.unreachable.count == 0


def test_buckets_split_by_distance():
    near, far = chain_examples(4, 4), chain_examples(3, 8, seed=1)
    examples = near + far
    predictions = [e.label for e in near] + [1 - e.label for e in far]
    report = bucket_report(examples, predictions, BucketKey.ENTITY_DISTANCE, [5.0], 2)
    assert [b.count for b in report.buckets] == [4, 3]
    assert [b.accuracy for b in report.buckets] == [1.0, 0.0]
    assert report.values == (3.0,) * 4 + (7.0,) * 3


def test_values_on_an_edge_go_to_the_upper_bucket():
    report = bucket_report(chain_examples(2, 4), [0, 0], BucketKey.INPUT_LENGTH, [4.0], 2)
    assert [b.count for b in report.buckets] == [0, 2]


def test_empty_buckets_have_no_metrics():
    report = bucket_report(chain_examples(3, 4), [0, 0, 0], BucketKey.ENTITY_DISTANCE, [1.0, 2.0, 10.0], 2)
    assert [b.count for b in report.buckets] == [0, 0, 3, 0]
    assert report.buckets[0].metrics is None
    assert report.buckets[0].accuracy is None


def test_write_report(tmp_path):
    report = bucket_report(chain_examples(3, 4), [0, 1, 0], BucketKey.ENTITY_DISTANCE, [2.0], 2)
    paths = write_report(tmp_path, report)
    assert sorted(p.name for p in paths) == ["report_distance.csv", "report_distance.dat", "report_distance.json"]
    data = json.loads((tmp_path / "report_distance.json").read_text())
    assert data["buckets"][0]["metrics"] is None
    assert data["buckets"][1]["lower"] == 2.0
    assert data["buckets"][1]["upper"] is None
    dat = (tmp_path / "report_distance.dat").read_text().splitlines()
    assert dat[1].startswith("-inf 2 0 NaN")
    assert pl.read_csv(tmp_path / "report_distance.csv")["count"].to_list() == [0, 3]


def test_report_plot_is_saved(tmp_path):
    report = bucket_report(chain_examples(3, 4), [0, 1, 0], BucketKey.ENTITY_DISTANCE, [2.0], 2)
    engine = PlotEngine(use_matplot=True)
    engine.plot_report(report)
    assert engine.savefig(tmp_path, "buckets").name == "buckets.png"
    engine.clear()


def test_plain_equivalent_has_equal_depth():
    pooled = ModelConfig(levels=3, sublayers=1, hidden=16)
    plain = plain_equivalent(pooled)
    assert plain.levels == 1
    assert plain.layer_count() == pooled.layer_count()


@pytest.mark.slow
def test_long_dependency_comparison_runs_on_short_chains():
    comparison = compare_long_dependency(
        chain_len=16, n_train=60, n_dev=20, n_test=40, seeds=(0, 1), train_cfg=TrainConfig(epochs=5)
    )
    assert len(comparison.runs) == 2
    assert 0.0 <= comparison.pooled_median <= 1.0
    assert comparison.margin == comparison.pooled_median - comparison.plain_median


def test_long_dependency_splits_must_be_non_empty():
    with pytest.raises(DatasetError):
        compare_long_dependency(n_dev=0, seeds=())


@pytest.mark.slow
def test_pooled_model_beats_plain_gcn_on_long_chains():
    started = time.monotonic()
    comparison = compare_long_dependency(chain_len=32, seeds=(0, 1, 2, 3, 4))
    assert len(comparison.runs) == 5
    assert comparison.margin > 0.05, comparison.runs
    # two models per seed
    assert (time.monotonic() - started) / 10 < 300


@given(random_adjacency(max_nodes=15), st.data())
def test_single_mention_entity_distance_is_the_mention_distance(a, data):
    n = a.shape[0]
    spans = st.tuples(st.integers(0, n - 1), st.integers(1, 3)).map(lambda s: (s[0], min(n, s[0] + s[1])))
    first, second = data.draw(spans), data.draw(spans)
    expected = mention_pair_distance(a, MentionSpan(*first, "a"), MentionSpan(*second, "b"))
    assert entity_distance(a, [cluster("a", first), cluster("b", second)]) == expected
