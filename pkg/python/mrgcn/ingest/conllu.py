"""CoNLL-U reader and writer.

Only the basic dependency layer is interpreted (ID, FORM, UPOS, HEAD, DEPREL);
the remaining columns are carried verbatim so documents serialize back unchanged.
Multiword-token ranges ("3-4") and empty nodes ("5.1") are skipped.
"""

import logging
from dataclasses import dataclass, replace
from typing import Final

from ingest.errors import ConllParseError

log = logging.getLogger(__name__)

CONLLU_COLUMNS: Final[int] = 10


@dataclass(frozen=True)
class Token:
    id: int
    form: str
    lemma: str
    upos: str
    xpos: str
    feats: str
    head: int
    deprel: str
    deps: str = "_"
    misc: str = "_"

    def with_form(self, form: str) -> "Token":
        return replace(self, form=form)

    def to_line(self) -> str:
        return "\t".join([
            str(self.id), self.form, self.lemma, self.upos, self.xpos,
            self.feats, str(self.head), self.deprel, self.deps, self.misc,
        ])


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[Token, ...], ...]

    @property
    def token_count(self) -> int:
        return sum(len(sentence) for sentence in self.sentences)

    def tokens(self) -> list[Token]:
        return [token for sentence in self.sentences for token in sentence]

    def sentence_offsets(self) -> list[int]:
        offsets, total = [], 0
        for sentence in self.sentences:
            offsets.append(total)
            total += len(sentence)
        return offsets

    def with_forms(self, forms: list[str]) -> "Document":
        if len(forms) != self.token_count:
            raise ValueError(f"expected {self.token_count} forms, got {len(forms)}")
        it = iter(forms)
        return replace(self, sentences=tuple(
            tuple(token.with_form(next(it)) for token in sentence)
            for sentence in self.sentences
        ))


def _parse_int(value: str, column: str, line_number: int, source: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConllParseError(f"non-integer {column} column {value!r}", line_number, source) from None


def _close_sentence(
    tokens: list[Token],
    line_numbers: list[int],
    source: str,
) -> tuple[Token, ...]:
    roots = 0
    for token, line_number in zip(tokens, line_numbers):
        if token.head < 0 or token.head > len(tokens):
            raise ConllParseError(
                f"HEAD {token.head} out of range for sentence of {len(tokens)} tokens", line_number, source
            )
        if token.head == token.id:
            raise ConllParseError(f"token {token.id} is its own head", line_number, source)
        if token.head == 0:
            roots += 1
    if roots != 1:
        raise ConllParseError(f"sentence has {roots} roots, expected exactly one", line_numbers[0], source)
    return tuple(tokens)


def parse_conllu(text: str, doc_id: str = "", *, source: str = "<string>") -> Document:
    sentences = list[tuple[Token, ...]]()
    tokens = list[Token]()
    line_numbers = list[int]()
    lines = text.splitlines()
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            if tokens:
                sentences.append(_close_sentence(tokens, line_numbers, source))
                tokens, line_numbers = [], []
            continue
        if line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != CONLLU_COLUMNS:
            raise ConllParseError(
                f"expected {CONLLU_COLUMNS} tab-separated columns, got {len(columns)}", line_number, source
            )
        raw_id = columns[0]
        if "-" in raw_id or "." in raw_id:
            continue
        token_id = _parse_int(raw_id, "ID", line_number, source)
        if token_id != len(tokens) + 1:
            raise ConllParseError(f"expected token ID {len(tokens) + 1}, got {token_id}", line_number, source)
        head = _parse_int(columns[6], "HEAD", line_number, source)
        tokens.append(Token(
            id=token_id,
            form=columns[1],
            lemma=columns[2],
            upos=columns[3],
            xpos=columns[4],
            feats=columns[5],
            head=head,
            deprel=columns[7],
            deps=columns[8],
            misc=columns[9],
        ))
        line_numbers.append(line_number)
    if tokens:
        sentences.append(_close_sentence(tokens, line_numbers, source))
    if not sentences:
        raise ConllParseError("document has no sentences", max(len(lines), 1), source)
    document = Document(doc_id=doc_id, sentences=tuple(sentences))
    log.debug("parsed %s: %d sentences, %d tokens", source, len(document.sentences), document.token_count)
    return document


def serialize_conllu(doc: Document) -> str:
    blocks = [
        "\n".join(token.to_line() for token in sentence) + "\n"
        for sentence in doc.sentences
    ]
    return "\n".join(blocks) + "\n"
