"""Word + POS embedding lookup with a deterministic hash fallback."""

import hashlib
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Final

import numpy as np
import numpy.typing as npt
from ingest.conllu import Document
from ingest.errors import EmbeddingFileError

log = logging.getLogger(__name__)

POS_DIM: Final[int] = 30
UPOS_TAGS: Final[tuple[str, ...]] = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)


def hash_vector(key: str, dim: int) -> npt.NDArray[np.float64]:
    """Unit-norm vector that depends only on key and dim."""
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "little"))
    vector = rng.standard_normal(dim)
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        return vector
    return vector / norm


def _default_pos_vectors(pos_dim: int) -> dict[str, npt.NDArray[np.float64]]:
    return {tag: hash_vector(f"upos::{tag}", pos_dim) for tag in UPOS_TAGS}


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    dim: int
    words: Mapping[str, npt.NDArray[np.float64]] = field(default_factory=dict)
    pos: Mapping[str, npt.NDArray[np.float64]] = field(default_factory=dict)
    pos_dim: int = POS_DIM

    def __post_init__(self):
        for word, vector in self.words.items():
            if vector.shape != (self.dim,):
                raise EmbeddingFileError(f"vector for {word!r} has shape {vector.shape}, expected ({self.dim},)")
        for tag, vector in self.pos.items():
            if vector.shape != (self.pos_dim,):
                raise EmbeddingFileError(f"POS vector for {tag!r} has shape {vector.shape}, expected ({self.pos_dim},)")

    @property
    def width(self) -> int:
        return self.dim + self.pos_dim

    def word_vector(self, form: str) -> npt.NDArray[np.float64]:
        vector = self.words.get(form)
        if vector is None:
            return hash_vector(f"word::{form}", self.dim)
        return vector

    def pos_vector(self, upos: str) -> npt.NDArray[np.float64]:
        vector = self.pos.get(upos)
        if vector is None:
            return hash_vector(f"upos::{upos}", self.pos_dim)
        return vector

    @classmethod
    def hashed(cls, dim: int, pos_dim: int = POS_DIM) -> "EmbeddingTable":
        return EmbeddingTable(dim=dim, pos=_default_pos_vectors(pos_dim), pos_dim=pos_dim)


def load_embeddings(path: Path, *, pos_dim: int = POS_DIM) -> EmbeddingTable:
    """Text format: one `word v1 ... vd` line per word."""
    words = dict[str, npt.NDArray[np.float64]]()
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as embedding_file:
        for line_number, line in enumerate(embedding_file, start=1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) < 2:
                continue
            try:
                vector = np.asarray([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError:
                raise EmbeddingFileError(f"{path}:{line_number}: non-numeric vector entry") from None
            if dim is None:
                dim = len(vector)
            elif len(vector) != dim:
                raise EmbeddingFileError(f"{path}:{line_number}: expected {dim} values, got {len(vector)}")
            words[parts[0]] = vector
    if dim is None:
        raise EmbeddingFileError(f"{path}: no vectors")
    log.debug("loaded %d vectors of width %d from %s", len(words), dim, path)
    return EmbeddingTable(dim=dim, words=words, pos=_default_pos_vectors(pos_dim), pos_dim=pos_dim)


def embed_tokens(doc: Document, table: EmbeddingTable) -> npt.NDArray[np.float64]:
    rows = [
        np.concatenate([table.word_vector(token.form), table.pos_vector(token.upos)])
        for token in doc.tokens()
    ]
    if not rows:
        return np.zeros((0, table.width), dtype=np.float64)
    return np.vstack(rows)
