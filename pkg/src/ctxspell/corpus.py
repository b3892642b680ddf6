"""Tokenization and corpus ingestion.

A corpus is a list of documents (one per input file), each a list of
sentences, each a list of tokens. Tokens keep the exact whitespace that
preceded them so that a document can be written back byte for byte.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

SPLITS = ("train", "test", "real", "none")

WORD, PUNCT, NUMBER, OTHER = "word", "punct", "number", "other"

_TOKEN_RE = re.compile(
    r"(?P<ws>\s*)(?:"
    r"(?P<word>[^\W\d_]+(?:['’-][^\W\d_]+)*)"
    r"|(?P<number>\d+(?:[.,]\d+)*)"
    r"|(?P<punct>[^\w\s])"
    r"|(?P<other>[^\s]))"
)
WORD_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")
_SENT_END = frozenset(".!?")


class IngestError(Exception):
    """Raised when an input file cannot be read or decoded."""


class Coord(NamedTuple):
    doc_id: str
    sent: int
    tok: int

    def __str__(self):
        return f"{self.doc_id}:{self.sent}:{self.tok}"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str
    doc_id: str
    sent_index: int
    tok_index: int
    pre: str = ""  # whitespace between the previous token and this one

    @property
    def coord(self) -> Coord:
        return Coord(self.doc_id, self.sent_index, self.tok_index)

    @property
    def is_word(self) -> bool:
        return self.kind == WORD


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[Token, ...], ...]
    source_path: str = ""
    trailing: str = ""

    def tokens(self) -> Iterator[Token]:
        for sent in self.sentences:
            yield from sent

    def token(self, sent: int, tok: int) -> Token:
        return self.sentences[sent][tok]

    def text(self) -> str:
        return "".join(t.pre + t.surface for t in self.tokens()) + self.trailing


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    split_tags: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if doc.doc_id in seen:
                raise ValueError(f"duplicate doc_id {doc.doc_id!r}")
            seen.add(doc.doc_id)
        object.__setattr__(self, "_index", {d.doc_id: d for d in self.documents})

    def __len__(self):
        return len(self.documents)

    def doc(self, doc_id: str) -> Document:
        try:
            return self._index[doc_id]
        except KeyError:
            raise KeyError(f"unknown doc_id {doc_id!r}") from None

    def token(self, coord: Coord) -> Token:
        doc = self.doc(coord[0])
        try:
            return doc.token(coord[1], coord[2])
        except IndexError:
            raise KeyError(f"no token at {Coord(*coord)}") from None

    def tokens(self) -> Iterator[Token]:
        for doc in self.documents:
            yield from doc.tokens()

    def split_of(self, doc_id: str) -> str:
        return self.split_tags.get(doc_id, "none")

    def subset(self, splits: Iterable[str]) -> "Corpus":
        wanted = set(splits)
        docs = tuple(d for d in self.documents if self.split_of(d.doc_id) in wanted)
        return Corpus(docs, {d.doc_id: self.split_of(d.doc_id) for d in docs})

    def merge(self, other: "Corpus") -> "Corpus":
        return Corpus(self.documents + other.documents, {**self.split_tags, **other.split_tags})

    def with_surfaces(self, changes: dict) -> "Corpus":
        """Copy of the corpus with the tokens at the given coordinates replaced."""
        by_doc: dict[str, dict] = {}
        for coord, surface in changes.items():
            self.token(coord)
            by_doc.setdefault(coord[0], {})[(coord[1], coord[2])] = surface
        docs = []
        for doc in self.documents:
            edits = by_doc.get(doc.doc_id)
            if not edits:
                docs.append(doc)
                continue
            sentences = tuple(
                tuple(replace(t, surface=edits[(t.sent_index, t.tok_index)])
                      if (t.sent_index, t.tok_index) in edits else t for t in sent)
                for sent in doc.sentences)
            docs.append(replace(doc, sentences=sentences))
        return Corpus(tuple(docs), dict(self.split_tags))


def _scan(text):
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.end("ws"):
            # only whitespace left
            return
        kind = m.lastgroup
        yield m.group("ws"), m.group(kind), kind
        pos = m.end()


def tokenize(text: str) -> list[tuple[str, str]]:
    """Split ``text`` into ``(surface, kind)`` pairs.

    >>> tokenize("The boss left.")
    [('The', 'word'), ('boss', 'word'), ('left', 'word'), ('.', 'punct')]
    """
    return [(surface, kind) for _, surface, kind in _scan(text)]


def _trailing_ws(text):
    stripped = text.rstrip()
    return text[len(stripped):] if stripped else text


def build_document(text: str, doc_id: str, source_path: str = "") -> Document:
    """Tokenize ``text`` and split it into sentences.

    A sentence ends at ``.``, ``!`` or ``?`` when the next token starts with
    an uppercase letter after whitespace, or at the end of the text.
    """
    raw = list(_scan(text))
    sentences: list[list[Token]] = [[]]
    for i, (ws, surface, kind) in enumerate(raw):
        sent = sentences[-1]
        sent.append(Token(surface, kind, doc_id, len(sentences) - 1, len(sent), ws))
        if kind == PUNCT and surface in _SENT_END and i + 1 < len(raw):
            nxt_ws, nxt, _ = raw[i + 1]
            if nxt_ws and nxt[:1].isupper():
                sentences.append([])
    if not sentences[-1]:
        sentences.pop()
    return Document(doc_id, tuple(tuple(s) for s in sentences), source_path,
                    _trailing_ws(text) if raw else text)


def read_text(path) -> str:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IngestError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from exc


def ingest_corpus(paths, split_tag: str = "none") -> Corpus:
    """Build a corpus with one document per file; doc ids are file stems."""
    if split_tag not in SPLITS:
        raise ValueError(f"unknown split tag {split_tag!r}")
    paths = [Path(p) for p in paths]
    if not paths:
        raise IngestError("no input files")
    docs = []
    stems = [p.stem for p in paths]
    for path in paths:
        # fall back to the full path when two files share a stem
        doc_id = path.stem if stems.count(path.stem) == 1 else str(path)
        docs.append(build_document(read_text(path), doc_id, str(path)))
    return Corpus(tuple(docs), {d.doc_id: split_tag for d in docs})


def dump_corpus(corpus: Corpus) -> str:
    """Canonical line dump: ``doc_id TAB sent TAB tok TAB kind TAB surface``."""
    lines = [f"{t.doc_id}\t{t.sent_index}\t{t.tok_index}\t{t.kind}\t{t.surface}\n"
             for t in corpus.tokens()]
    return "".join(lines)


def load_dump(text: str, split_tag: str = "none") -> Corpus:
    """Inverse of :func:`dump_corpus` (whitespace is restored as single spaces)."""
    docs: dict[str, list[list[Token]]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        try:
            doc_id, sent, tok, kind, surface = line.split("\t")
            sent, tok = int(sent), int(tok)
        except ValueError:
            raise IngestError(f"line {lineno}: malformed corpus dump row") from None
        sents = docs.setdefault(doc_id, [])
        while len(sents) <= sent:
            sents.append([])
        if tok != len(sents[sent]):
            raise IngestError(f"line {lineno}: non-dense token index")
        pre = "" if (sent == 0 and tok == 0) or kind == PUNCT else " "
        sents[sent].append(Token(surface, kind, doc_id, sent, tok, pre))
    documents = tuple(Document(d, tuple(tuple(s) for s in sents)) for d, sents in docs.items())
    return Corpus(documents, {d: split_tag for d in docs})
