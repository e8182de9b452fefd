import json

import numpy as np
import pytest
from conftest import dependency_trees
from graph_core import EdgeCategory
from hypothesis import given
from hypothesis import strategies as st
from ingest import (
    POS_DIM,
    AnonymizationError,
    ConllParseError,
    Document,
    EmbeddingFileError,
    EmbeddingTable,
    EntityCluster,
    MentionSpan,
    RelationInstance,
    SidecarError,
    TaskKind,
    Token,
    anonymize,
    build_document_graph,
    embed_tokens,
    hash_vector,
    load_corpus,
    load_document,
    load_embeddings,
    parse_conllu,
    parse_sidecar,
    serialize_conllu,
    sidecar_to_json,
)

TWO_SENTENCES = (
    "# text = Cats sleep\n"
    "1\tCats\tcat\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tsleep\tsleep\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
    "1\tThey\tthey\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
    "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "2\tpurr\tpurr\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
)


def test_parse_skips_comments_and_multiword_ranges():
    doc = parse_conllu(TWO_SENTENCES, "cats")
    assert doc.token_count == 4
    assert [token.form for token in doc.tokens()] == ["Cats", "sleep", "They", "purr"]
    assert doc.sentence_offsets() == [0, 2]


def test_serialize_then_parse_keeps_tokens():
    doc = parse_conllu(TWO_SENTENCES, "cats")
    assert parse_conllu(serialize_conllu(doc), "cats") == doc


@pytest.mark.parametrize(
    ("text", "line_number", "message"),
    [
        ("1\ta\ta\tDET\t_\t_\tx\tdet\t_\t_\n", 1, "non-integer HEAD"),
        ("1\ta\ta\tDET\t_\t_\t0\troot\t_\n", 1, "10 tab-separated columns"),
        ("1\ta\ta\tDET\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t5\tdep\t_\t_\n", 2, "out of range"),
        ("1\ta\ta\tDET\t_\t_\t0\troot\t_\t_\n3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n", 2, "expected token ID 2"),
        ("1\ta\ta\tDET\t_\t_\t1\tdep\t_\t_\n", 1, "its own head"),
        ("1\ta\ta\tDET\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n", 1, "2 roots"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_number, message):
    with pytest.raises(ConllParseError, match=message) as info:
        parse_conllu(text, source="bad.conllu")
    assert info.value.line_number == line_number
    assert str(info.value).startswith(f"bad.conllu:{line_number}:")


def test_empty_document_is_a_parse_error():
    with pytest.raises(ConllParseError, match="no sentences"):
        parse_conllu("# only a comment\n")


def test_document_graph_edges():
    doc = parse_conllu(TWO_SENTENCES, "cats")
    graph = build_document_graph(doc, coref=[(0, 2)])
    by_category = {}
    for edge in graph.graph.edges:
        by_category.setdefault(edge.kind.category, []).append((edge.src, edge.dst))
    assert by_category[EdgeCategory.ADJACENCY] == [(0, 1), (2, 3)]
    assert by_category[EdgeCategory.DEPENDENCY] == [(1, 0), (3, 2)]
    assert by_category[EdgeCategory.COREFERENCE] == [(0, 2)]
    assert by_category[EdgeCategory.SENTENCE_SEQ] == [(1, 3)]
    assert graph.sentence_spans == ((0, 2), (2, 4))
    assert graph.root_tokens == (1, 3)
    assert graph.graph.payload(0) == ("Cats", "NOUN")


def test_sample_documents_load_with_sidecars(sample_corpus, bladder):
    assert [doc.doc_id for doc in sample_corpus] == ["apple", "bladder"]
    (instance,) = bladder.sidecar.instances
    assert instance.task is TaskKind.ENTITY_LEVEL
    assert [cluster.entity_id for cluster in instance.entities] == ["population", "disease"]
    assert instance.entities[1].mentions[0].tokens() == range(7, 9)


def test_load_corpus_needs_documents(tmp_path):
    with pytest.raises(SidecarError):
        load_corpus(tmp_path)


def test_sidecar_round_trip_and_validation(bladder):
    sidecar = bladder.sidecar
    assert parse_sidecar(sidecar_to_json(sidecar), token_count=9) == sidecar
    with pytest.raises(SidecarError, match="exceeds 5 tokens"):
        parse_sidecar(sidecar_to_json(sidecar), token_count=5)


@pytest.mark.parametrize(
    "raw",
    [
        {"coref": []},
        {"doc_id": "d", "instances": [{"entities": [{"id": "a", "mentions": [[0, 1]]}], "label": 0}]},
        {"doc_id": "d", "instances": [{"entities": [{"id": "a", "mentions": []}, {"id": "b", "mentions": [[0, 1]]}], "label": 0}]},
        {"doc_id": "d", "instances": [{"entities": [{"id": "a", "mentions": [[2, 1]]}, {"id": "b", "mentions": [[0, 1]]}], "label": 0}]},
    ],
)
def test_malformed_sidecars(raw):
    with pytest.raises(SidecarError):
        parse_sidecar(json.dumps(raw))


def _instance(*spans_per_entity: list[tuple[int, int]]) -> RelationInstance:
    return RelationInstance(
        doc_id="d",
        entities=tuple(
            EntityCluster(f"e{k}", tuple(MentionSpan(start, end, f"e{k}") for start, end in spans))
            for k, spans in enumerate(spans_per_entity)
        ),
        label=1,
    )


def test_anonymize_replaces_every_mention(bladder):
    doc = anonymize(bladder.document, _instance([(5, 6)], [(7, 9), (0, 1)]))
    forms = [token.form for token in doc.tokens()]
    assert forms == ["ENTITY_1", "study", "was", "performed", "in", "ENTITY_0", "with", "ENTITY_1", "ENTITY_1"]
    assert [token.head for token in doc.tokens()] == [token.head for token in bladder.document.tokens()]


def test_anonymize_rejects_overlapping_entities(bladder):
    with pytest.raises(AnonymizationError, match="overlapping"):
        anonymize(bladder.document, _instance([(5, 8)], [(7, 9)]))


def test_hash_vectors_are_deterministic_unit_vectors():
    first, second = hash_vector("word::apple", 16), hash_vector("word::apple", 16)
    assert np.array_equal(first, second)
    assert np.linalg.norm(first) == pytest.approx(1.0)
    assert not np.array_equal(first, hash_vector("word::pear", 16))


def test_embed_tokens_concatenates_word_and_pos(apple):
    table = EmbeddingTable.hashed(8)
    features = embed_tokens(apple.document, table)
    assert features.shape == (3, 8 + POS_DIM)
    assert np.array_equal(features[2, :8], table.word_vector("apple"))
    assert np.array_equal(features[2, 8:], table.pos_vector("NOUN"))


def test_load_embeddings(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text("apple 1 0 0\nred 0 1 0\n")
    table = load_embeddings(path)
    assert table.dim == 3
    assert table.word_vector("red").tolist() == [0.0, 1.0, 0.0]
    assert table.word_vector("pear").shape == (3,)


def test_load_embeddings_rejects_ragged_rows(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text("apple 1 0 0\nred 0 1\n")
    with pytest.raises(EmbeddingFileError, match=":2:"):
        load_embeddings(path)


def _tree_document(trees: list[list[tuple[int, str]]]) -> Document:
    return Document(
        doc_id="trees",
        sentences=tuple(
            tuple(
                Token(id=i + 1, form=f"t{i}", lemma="_", upos="X", xpos="_", feats="_", head=head, deprel=deprel)
                for i, (head, deprel) in enumerate(tree)
            )
            for tree in trees
        ),
    )


@given(st.lists(dependency_trees(max_tokens=8), min_size=1, max_size=4), st.data())
def test_document_graph_edge_count(trees, data):
    doc = _tree_document(trees)
    n = doc.token_count
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    coref = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=4)) if pairs else []
    graph = build_document_graph(doc, coref)
    sentence_arcs = sum(len(tree) - 1 for tree in trees)
    # adjacency + dependency + coreference + root-to-root
    assert len(graph.graph.edges) == 2 * sentence_arcs + len(coref) + len(trees) - 1
    assert len(graph.root_tokens) == len(trees)


@pytest.mark.parametrize(
    "spans",
    [
        ([(5, 6)], [(7, 9), (0, 1)]),
        ([(0, 2)], [(8, 9)]),
        ([(3, 4)], [(6, 7)]),
    ],
)
def test_anonymize_is_idempotent(bladder, spans):
    instance = _instance(*spans)
    once = anonymize(bladder.document, instance)
    assert anonymize(once, instance) == once


def test_coreference_self_pair_is_rejected():
    with pytest.raises(SidecarError, match="itself"):
        parse_sidecar(json.dumps({"doc_id": "d", "coref": [[1, 1]]}))


def test_conllu_that_is_not_utf8_names_the_line(tmp_path):
    path = tmp_path / "latin1.conllu"
    path.write_bytes(
        b"1\tCats\tcat\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        b"2\tsl\xe9ep\tsleep\tVERB\t_\t_\t0\troot\t_\t_\n\n"
    )
    with pytest.raises(ConllParseError, match="invalid UTF-8") as excinfo:
        load_document(path)
    assert excinfo.value.line_number == 2
    assert excinfo.value.source == str(path)


def test_sidecar_that_is_not_utf8(tmp_path):
    (tmp_path / "cats.conllu").write_text(TWO_SENTENCES)
    (tmp_path / "cats.json").write_bytes(b'{\n"doc_id": "c\xe9ts"}\n')
    with pytest.raises(SidecarError, match=r"cats.json:2: invalid UTF-8"):
        load_document(tmp_path / "cats.conllu")
