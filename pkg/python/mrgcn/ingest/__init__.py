"""CoNLL-U + sidecar ingestion into document graphs and relation instances."""

from ingest.annotations import (
    EntityCluster,
    MentionSpan,
    RelationInstance,
    Sidecar,
    TaskKind,
    parse_sidecar,
    sidecar_to_json,
)
from ingest.conllu import Document, Token, parse_conllu, serialize_conllu
from ingest.corpus import CorpusDocument, load_corpus, load_document
from ingest.document_graph import DocumentGraph, anonymize, build_document_graph
from ingest.embeddings import (
    POS_DIM,
    UPOS_TAGS,
    EmbeddingTable,
    embed_tokens,
    hash_vector,
    load_embeddings,
)
from ingest.errors import (
    AnonymizationError,
    ConllParseError,
    EmbeddingFileError,
    IngestError,
    SidecarError,
)

__all__ = [
    "POS_DIM",
    "UPOS_TAGS",
    "AnonymizationError",
    "ConllParseError",
    "CorpusDocument",
    "Document",
    "DocumentGraph",
    "EmbeddingFileError",
    "EmbeddingTable",
    "EntityCluster",
    "IngestError",
    "MentionSpan",
    "RelationInstance",
    "Sidecar",
    "SidecarError",
    "TaskKind",
    "Token",
    "anonymize",
    "build_document_graph",
    "embed_tokens",
    "hash_vector",
    "load_corpus",
    "load_document",
    "load_embeddings",
    "parse_conllu",
    "parse_sidecar",
    "serialize_conllu",
    "sidecar_to_json",
]
