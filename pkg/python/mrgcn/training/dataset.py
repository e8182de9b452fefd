"""Relation examples: features + coarsening hierarchy per instance."""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from coarsen import CoarsenConfig, GraphHierarchy, build_hierarchy
from ingest import (
    CorpusDocument,
    Document,
    EmbeddingTable,
    EntityCluster,
    MentionSpan,
    RelationInstance,
    Sidecar,
    TaskKind,
    Token,
    anonymize,
    embed_tokens,
)
from numeric import Matrix
from training.errors import DatasetError

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PreparedExample:
    instance: RelationInstance
    features: Matrix
    hierarchy: GraphHierarchy

    @property
    def doc_id(self) -> str:
        return self.instance.doc_id

    @property
    def label(self) -> int:
        return self.instance.label

    @property
    def input_length(self) -> int:
        return self.features.shape[0]


def _prepare_document(
    doc: CorpusDocument,
    table: EmbeddingTable,
    depth: int,
    coarsen: CoarsenConfig,
    anonymize_entities: bool,
    num_classes: int | None,
) -> list[PreparedExample]:
    if not doc.sidecar.instances:
        return []
    for instance in doc.sidecar.instances:
        instance.validate(token_count=doc.document.token_count, num_classes=num_classes)
    hierarchy = build_hierarchy(doc.graph(), depth, coarsen)
    shared = None if anonymize_entities else embed_tokens(doc.document, table)
    examples = list[PreparedExample]()
    for instance in doc.sidecar.instances:
        features = shared if shared is not None else embed_tokens(anonymize(doc.document, instance), table)
        examples.append(PreparedExample(instance=instance, features=features, hierarchy=hierarchy))
    return examples


def prepare_examples(
    documents: Sequence[CorpusDocument],
    table: EmbeddingTable,
    *,
    levels: int,
    coarsen: CoarsenConfig,
    anonymize_entities: bool = False,
    num_classes: int | None = None,
    jobs: int = 1,
) -> list[PreparedExample]:
    """One example per relation instance; levels counts graphs, so levels - 1 pooling steps.

    With num_classes set, every label must lie in [0, num_classes) or SidecarError is raised.
    """
    if levels < 1:
        raise DatasetError(f"levels must be >= 1, got {levels}")

    def prepare(doc: CorpusDocument) -> list[PreparedExample]:
        return _prepare_document(doc, table, levels - 1, coarsen, anonymize_entities, num_classes)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            per_document = list(executor.map(prepare, documents))
    else:
        per_document = [prepare(doc) for doc in documents]
    examples = [example for batch in per_document for example in batch]
    log.info("prepared %d examples from %d documents", len(examples), len(documents))
    return examples


def entity_count(examples: Sequence[PreparedExample]) -> int:
    if not examples:
        raise DatasetError("empty dataset")
    counts = {len(example.instance.entities) for example in examples}
    if len(counts) != 1:
        raise DatasetError(f"instances mix entity counts {sorted(counts)}")
    return counts.pop()


def collapse_to_detection(examples: Sequence[PreparedExample], none_label: int = 0) -> list[PreparedExample]:
    """Relabel to binary: 0 for none_label, 1 for every other class."""
    return [
        replace(example, instance=replace(example.instance, label=int(example.label != none_label)))
        for example in examples
    ]


def _chain_document(doc_id: str, words: Sequence[str]) -> Document:
    tokens = tuple(
        Token(
            id=i + 1,
            form=word,
            lemma=word,
            upos="X",
            xpos="_",
            feats="_",
            head=i,
            deprel="root" if i == 0 else "dep",
        )
        for i, word in enumerate(words)
    )
    return Document(doc_id=doc_id, sentences=(tokens,))


def synth_long_dep(n_instances: int, chain_len: int, vocab: int, seed: int) -> list[CorpusDocument]:
    """Single-sentence chain documents; the label is the XOR of the endpoint word classes.

    Word w{i} has class i % 2. Labels alternate before shuffling so both classes
    are equally frequent.
    """
    if chain_len < 2 or vocab < 2:
        raise DatasetError(f"chain_len and vocab must be >= 2, got {chain_len} and {vocab}")
    rng = np.random.default_rng(seed)
    by_class = [np.arange(c, vocab, 2) for c in (0, 1)]
    labels = rng.permutation(np.arange(n_instances) % 2)
    documents = list[CorpusDocument]()
    for i, label in enumerate(labels):
        first_class = int(rng.integers(2))
        last_class = first_class ^ int(label)
        word_ids = rng.integers(vocab, size=chain_len)
        word_ids[0] = rng.choice(by_class[first_class])
        word_ids[-1] = rng.choice(by_class[last_class])
        doc_id = f"synth{i:05d}"
        instance = RelationInstance(
            doc_id=doc_id,
            entities=(
                EntityCluster("e0", (MentionSpan(0, 1, "e0"),)),
                EntityCluster("e1", (MentionSpan(chain_len - 1, chain_len, "e1"),)),
            ),
            label=int(label),
            task=TaskKind.MENTION_LEVEL,
        )
        documents.append(CorpusDocument(
            document=_chain_document(doc_id, [f"w{w}" for w in word_ids]),
            sidecar=Sidecar(doc_id=doc_id, coref=(), instances=(instance,)),
        ))
    return documents


def split_documents(
    documents: Sequence[CorpusDocument], dev_fraction: float, seed: int
) -> tuple[list[CorpusDocument], list[CorpusDocument]]:
    """Seeded document-level train/dev split."""
    order = np.random.default_rng(seed).permutation(len(documents))
    dev_size = int(round(len(documents) * dev_fraction))
    dev = sorted(order[:dev_size].tolist())
    train = sorted(order[dev_size:].tolist())
    return [documents[i] for i in train], [documents[i] for i in dev]
