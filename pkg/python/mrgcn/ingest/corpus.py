"""Directory of `<doc_id>.conllu` + `<doc_id>.json` pairs."""

import logging
from dataclasses import dataclass
from pathlib import Path

from ingest.annotations import Sidecar, parse_sidecar
from ingest.conllu import Document, parse_conllu
from ingest.document_graph import DocumentGraph, build_document_graph
from ingest.errors import ConllParseError, SidecarError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusDocument:
    document: Document
    sidecar: Sidecar

    @property
    def doc_id(self) -> str:
        return self.document.doc_id

    def graph(self) -> DocumentGraph:
        return build_document_graph(self.document, self.sidecar.coref)


def _decode(path: Path) -> tuple[str | None, int]:
    """File text, or None and the 1-based line holding the first byte that is not UTF-8."""
    raw = path.read_bytes()
    try:
        return raw.decode("utf-8"), 0
    except UnicodeDecodeError as e:
        return None, raw[: e.start].count(b"\n") + 1


def _read_conllu(path: Path) -> str:
    text, line_number = _decode(path)
    if text is None:
        raise ConllParseError("invalid UTF-8", line_number, source=str(path))
    return text


def _read_sidecar(path: Path) -> str:
    text, line_number = _decode(path)
    if text is None:
        raise SidecarError(f"{path}:{line_number}: invalid UTF-8")
    return text


def load_document(conllu_path: Path, sidecar_path: Path | None = None) -> CorpusDocument:
    if sidecar_path is None:
        candidate = conllu_path.with_suffix(".json")
        sidecar_path = candidate if candidate.is_file() else None
    doc_id = conllu_path.stem
    sidecar_text = _read_sidecar(sidecar_path) if sidecar_path else None
    if sidecar_text is not None:
        doc_id = parse_sidecar(sidecar_text).doc_id
    document = parse_conllu(_read_conllu(conllu_path), doc_id, source=str(conllu_path))
    if sidecar_text is None:
        sidecar = Sidecar(doc_id=doc_id, coref=(), instances=())
    else:
        sidecar = parse_sidecar(sidecar_text, token_count=document.token_count)
    return CorpusDocument(document=document, sidecar=sidecar)


def load_corpus(corpus_dir: Path) -> list[CorpusDocument]:
    documents = [load_document(path) for path in sorted(corpus_dir.glob("*.conllu"))]
    if not documents:
        raise SidecarError(f"no .conllu files in {corpus_dir}")
    log.info("loaded %d documents from %s", len(documents), corpus_dir)
    return documents
