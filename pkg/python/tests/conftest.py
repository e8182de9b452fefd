from pathlib import Path

import pytest
from graph_core import ADJACENT, AdjacencyMatrix, LabeledGraph, adjacency, build_graph
from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite
from ingest import CorpusDocument, load_corpus, load_document

SAMPLE_CORPUS = Path(__file__).resolve().parents[2] / "data" / "sample_corpus"


def undirected(n: int, pairs: list[tuple[int, int]]) -> LabeledGraph:
    return build_graph(n, [(u, v, ADJACENT) for u, v in pairs])


@pytest.fixture
def p4() -> AdjacencyMatrix:
    return adjacency(undirected(4, [(0, 1), (1, 2), (2, 3)]))


@pytest.fixture
def star() -> AdjacencyMatrix:
    return adjacency(undirected(4, [(0, 1), (0, 2), (0, 3)]))


@pytest.fixture
def hybrid_figure() -> AdjacencyMatrix:
    return adjacency(undirected(8, [(0, 1), (1, 2), (1, 4), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)]))


@pytest.fixture
def sample_corpus() -> list[CorpusDocument]:
    return load_corpus(SAMPLE_CORPUS)


@pytest.fixture
def apple() -> CorpusDocument:
    return load_document(SAMPLE_CORPUS / "apple.conllu")


@pytest.fixture
def bladder() -> CorpusDocument:
    return load_document(SAMPLE_CORPUS / "bladder.conllu")


@composite
def random_adjacency(draw: DrawFn, max_nodes: int = 40) -> AdjacencyMatrix:
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * n, unique=True)) if pairs else []
    return adjacency(undirected(n, chosen))


@composite
def dependency_trees(draw: DrawFn, max_tokens: int = 25) -> list[tuple[int, str]]:
    """(head, deprel) per token, 1-based heads, exactly one root."""
    n = draw(st.integers(min_value=1, max_value=max_tokens))
    labels = st.sampled_from(["nsubj", "obj", "dobj", "iobj", "ccomp", "xcomp", "amod", "det", "case", "obl", "nmod", "compound"])
    order = draw(st.permutations(list(range(1, n + 1))))
    heads = {order[0]: 0}
    for i in range(1, n):
        heads[order[i]] = order[draw(st.integers(min_value=0, max_value=i - 1))]
    return [(heads[t], "root" if heads[t] == 0 else draw(labels)) for t in range(1, n + 1)]
