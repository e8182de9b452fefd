import numpy as np
import pytest
from coarsen import (
    CORE_ARGUMENTS,
    CoarsenConfig,
    DimensionMismatchError,
    MatchingError,
    MatchingMatrix,
    PoolingMethod,
    build_hierarchy,
    clause_match,
    clause_match_groups,
    coarsen_adjacency,
    hybrid_match,
    level_to_dot,
    merge_tree_to_dot,
    nhem_match,
    normalized_edge_weight,
    random_match,
    sem_match,
    transfer_edges,
)
from conftest import dependency_trees, random_adjacency, undirected
from graph_core import COREFERENT, EdgeKind, adjacency, build_graph, hop_distances
from hypothesis import given, settings
from hypothesis import strategies as st


def brute_force_coarsen(a: np.ndarray, matching: MatchingMatrix) -> np.ndarray:
    coarse = np.zeros((matching.n_coarse, matching.n_coarse), dtype=np.int64)
    for i in range(matching.n_fine):
        for j in range(matching.n_fine):
            coarse[matching.assignment[i], matching.assignment[j]] += a[i, j]
    return coarse


def test_from_groups_numbers_supernodes_by_smallest_member():
    matching = MatchingMatrix.from_groups(5, [(4, 1), (2, 3)])
    assert matching.assignment == (0, 1, 2, 2, 1)
    assert matching.members == ((0,), (1, 4), (2, 3))
    assert matching.sizes().tolist() == [1, 2, 2]


def test_from_groups_rejects_overlap():
    with pytest.raises(MatchingError):
        MatchingMatrix.from_groups(3, [(0, 1), (1, 2)])


def test_matching_rejects_empty_supernodes():
    with pytest.raises(MatchingError):
        MatchingMatrix(n_fine=3, n_coarse=3, assignment=(0, 0, 1))


def test_composition():
    first = MatchingMatrix.from_groups(4, [(0, 1), (2, 3)])
    second = MatchingMatrix.from_groups(2, [(0, 1)])
    composed = first.then(second)
    assert composed.assignment == (0, 0, 0, 0)
    assert np.array_equal(composed.to_dense(), first.to_dense() @ second.to_dense())


def test_p4_hybrid_matching(p4):
    matching = hybrid_match(p4)
    assert matching.assignment == (0, 0, 1, 1)
    assert coarsen_adjacency(p4, matching).tolist() == [[2, 1], [1, 2]]


def test_star_merges_its_leaves(star):
    assert sem_match(star) == [(1, 2, 3)]
    assert hybrid_match(star).assignment == (0, 1, 1, 1)


def test_hybrid_figure(hybrid_figure):
    assert sem_match(hybrid_figure) == [(0, 2)]
    assert nhem_match(hybrid_figure, frozenset({0, 2})) == [(3, 4), (6, 7)]
    matching = hybrid_match(hybrid_figure)
    assert matching.members == ((0, 2), (1,), (3, 4), (5,), (6, 7))


def test_normalized_edge_weight(hybrid_figure):
    assert normalized_edge_weight(hybrid_figure, 6, 7) == pytest.approx(0.5)
    assert normalized_edge_weight(hybrid_figure, 5, 6) == pytest.approx(1 / np.sqrt(6))


def test_hierarchy_stops_merging_once_nothing_merges(p4):
    hierarchy = build_hierarchy(undirected(4, [(0, 1), (1, 2), (2, 3)]), 4)
    assert hierarchy.sizes() == [4, 2, 1, 1, 1]
    assert hierarchy.stopped_early
    assert hierarchy.depth == 4
    assert hierarchy.levels[1].members == ((0, 1), (2, 3))
    assert np.array_equal(hierarchy.adjacency(0), p4)


def test_aggressive_pooling_composes_two_passes():
    graph = undirected(4, [(0, 1), (1, 2), (2, 3)])
    hierarchy = build_hierarchy(graph, 1, CoarsenConfig(passes_per_level=2))
    assert hierarchy.sizes() == [4, 1]
    assert hierarchy.matchings[0].assignment == (0, 0, 0, 0)
    assert hierarchy.adjacency(1).tolist() == [[6]]


def test_identity_method_keeps_sizes(apple):
    hierarchy = build_hierarchy(apple.graph(), 3, CoarsenConfig(method="identity"))
    assert hierarchy.sizes() == [3, 3, 3, 3]
    assert not hierarchy.stopped_early


def test_random_matching(p4):
    assert random_match(p4, seed=3, probability=1.0).assignment == (0, 0, 1, 1)
    assert random_match(p4, seed=3, probability=0.0).is_identity
    assert random_match(p4, seed=11) == random_match(p4, seed=11)


def test_random_hierarchy_is_seeded(bladder):
    cfg = CoarsenConfig(method="random", seed=5)
    first = build_hierarchy(bladder.graph(), 2, cfg)
    second = build_hierarchy(bladder.graph(), 2, cfg)
    assert first.matchings == second.matchings


def test_coarsen_adjacency_checks_dimensions(p4):
    with pytest.raises(DimensionMismatchError):
        coarsen_adjacency(p4, MatchingMatrix.identity(3))


def test_clause_matching_collapses_noun_phrase(apple):
    groups = clause_match_groups(apple.graph().graph)
    assert [(group.head, group.children, group.labels) for group in groups] == [(2, (0, 1), ("det", "amod"))]
    hierarchy = build_hierarchy(apple.graph(), 1, CoarsenConfig(method="cm"))
    assert hierarchy.sizes() == [3, 1]
    assert hierarchy.levels[1].representatives == (2,)


def test_hybrid_matching_on_noun_phrase(apple):
    assert build_hierarchy(apple.graph(), 1).sizes() == [3, 2]


def test_clause_matching_keeps_clause_skeleton(bladder):
    graph = bladder.graph().graph
    matching = clause_match(graph)
    assert matching.members == ((0, 1), (2, 3), (4, 5), (6, 7, 8))
    # patients hangs off performed through obl but performed already absorbed was
    assert matching.assignment[5] != matching.assignment[3]
    assert build_hierarchy(bladder.graph(), 1).sizes() == [9, 5]


def test_clause_matching_merges_coreference():
    graph = build_graph(3, [(1, 0, EdgeKind.dependency("nsubj")), (0, 2, COREFERENT)])
    assert clause_match(graph).assignment == (0, 1, 0)


def test_transfer_edges_drops_merged_arcs(apple):
    graph = apple.graph().graph
    coarse = transfer_edges(graph, clause_match(graph))
    assert coarse.n == 1
    assert coarse.edges == ()


def test_level_dot_names_supernodes_by_head(apple):
    hierarchy = build_hierarchy(apple.graph(), 1, CoarsenConfig(method="cm"))
    labels = [token.form for token in apple.document.tokens()]
    dot = level_to_dot(hierarchy, 1, labels)
    assert dot.splitlines() == ["graph L1 {", '\tL1_N0 [label="apple (+2)", internal=6];', "}"]
    level0 = level_to_dot(hierarchy, 0, labels)
    assert level0.count(" -- ") == 3
    tree = merge_tree_to_dot(hierarchy, labels)
    assert tree.count(" -> L1_N0;") == 3


@settings(max_examples=200, deadline=None)
@given(random_adjacency(), st.sampled_from(["hm", "random"]), st.integers(min_value=0, max_value=3))
def test_coarsening_algebra(a, method, seed):
    matching = hybrid_match(a) if method == "hm" else random_match(a, seed)
    dense = matching.to_dense()
    assert (dense.sum(axis=1) == 1).all()
    coarse = coarsen_adjacency(a, matching)
    assert np.array_equal(coarse, brute_force_coarsen(a, matching))
    assert np.array_equal(coarse, coarse.T)
    assert coarse.sum() == a.sum()


@settings(max_examples=100, deadline=None)
@given(random_adjacency(max_nodes=25))
def test_coarsening_contracts_distances(a):
    matching = hybrid_match(a)
    fine = hop_distances(a)
    coarse = hop_distances(coarsen_adjacency(a, matching))
    index = np.asarray(matching.assignment)
    assert (coarse[np.ix_(index, index)] <= fine).all()


@settings(max_examples=50, deadline=None)
@given(random_adjacency(max_nodes=20), st.sampled_from([m.value for m in PoolingMethod]))
def test_level_sizes_never_grow(a, method):
    n = a.shape[0]
    graph = undirected(n, [(u, v) for u in range(n) for v in range(u + 1, n) if a[u, v]])
    sizes = build_hierarchy(graph, 3, CoarsenConfig(method=method)).sizes()
    assert len(sizes) == 4
    assert all(later <= earlier for earlier, later in zip(sizes, sizes[1:]))


@settings(max_examples=100, deadline=None)
@given(dependency_trees())
def test_core_argument_arcs_are_never_merged(tree):
    edges = [(head - 1, t, EdgeKind.dependency(label)) for t, (head, label) in enumerate(tree) if head]
    graph = build_graph(len(tree), edges)
    matching = clause_match(graph)
    for head, dependent, kind in edges:
        if kind.dep_label in CORE_ARGUMENTS:
            assert matching.assignment[head] != matching.assignment[dependent]
    assert np.array_equal(adjacency(graph), adjacency(graph).T)


def _tree_graph(tree, coref=()):
    edges = [(head - 1, t, EdgeKind.dependency(label)) for t, (head, label) in enumerate(tree) if head]
    return build_graph(len(tree), [*edges, *((a, b, COREFERENT) for a, b in coref)])


@settings(max_examples=100, deadline=None)
@given(dependency_trees(), st.data())
def test_clause_matching_contracts_distances(tree, data):
    n = len(tree)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    coref = data.draw(st.lists(st.sampled_from(pairs), max_size=3, unique=True)) if pairs else []
    graph = _tree_graph(tree, coref)
    a = adjacency(graph)
    matching = clause_match(graph)
    index = np.asarray(matching.assignment)
    coarse = hop_distances(coarsen_adjacency(a, matching))
    assert (coarse[np.ix_(index, index)] <= hop_distances(a)).all()


@settings(max_examples=100, deadline=None)
@given(random_adjacency(max_nodes=25), st.integers(min_value=0, max_value=10))
def test_random_matching_contracts_distances(a, seed):
    matching = random_match(a, seed)
    index = np.asarray(matching.assignment)
    coarse = hop_distances(coarsen_adjacency(a, matching))
    assert (coarse[np.ix_(index, index)] <= hop_distances(a)).all()


@settings(max_examples=100, deadline=None)
@given(random_adjacency(max_nodes=25), st.integers(min_value=0, max_value=10))
def test_random_matching_merges_adjacent_pairs_only(a, seed):
    for group in random_match(a, seed).members:
        assert len(group) <= 2
        if len(group) == 2:
            assert a[group[0], group[1]] == 1


@settings(max_examples=100, deadline=None)
@given(random_adjacency(max_nodes=25))
def test_hybrid_matching_merges_pairs_or_equivalent_nodes(a):
    def neighbors(u):
        return frozenset(np.flatnonzero(a[u]).tolist())

    for group in hybrid_match(a).members:
        if len(group) == 2 and a[group[0], group[1]] == 1:
            continue
        if len(group) >= 2:
            assert len({neighbors(u) for u in group}) == 1
            assert neighbors(group[0])


@settings(max_examples=100, deadline=None)
@given(dependency_trees())
def test_clause_matching_never_chains_merges(tree):
    graph = _tree_graph(tree)
    a = adjacency(graph)
    groups = clause_match_groups(graph)
    heads = {group.head for group in groups}
    for group in groups:
        assert not heads & set(group.children)
        for child in group.children:
            assert a[group.head, child] == 1
