"""Dictionary of word-forms with POS ambiguity classes and frequencies.

Background frequency (``bf``) comes from the lexicon file; document frequency
tables are counted on demand from a corpus.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Coord, Corpus

TAGSET = frozenset({"N", "V", "ADJ", "ADV", "DET", "PRON", "PREP", "CONJ", "NUM", "INTERJ", "PROPER"})


class LexiconError(ValueError):
    pass


def fold(form: str) -> str:
    return form.casefold()


@dataclass
class LexEntry:
    form: str
    pos_bf: dict = field(default_factory=dict)  # tag -> frequency share

    @property
    def pos_set(self) -> frozenset:
        return frozenset(self.pos_bf)

    @property
    def bf(self) -> int:
        return sum(self.pos_bf.values())


class Lexicon:
    """Word-forms keyed by case-folded spelling; distinct casings are kept apart."""

    def __init__(self, tagset=TAGSET):
        self.tagset = frozenset(tagset)
        self.entries: dict[str, list[LexEntry]] = {}

    def add(self, form: str, pos: str, bf: int = 0) -> None:
        if not form:
            raise LexiconError("empty form")
        if pos not in self.tagset:
            raise LexiconError(f"unknown tag {pos!r}")
        if bf < 0:
            raise LexiconError(f"negative frequency for {form!r}")
        bucket = self.entries.setdefault(fold(form), [])
        for entry in bucket:
            if entry.form == form:
                entry.pos_bf[pos] = entry.pos_bf.get(pos, 0) + bf
                return
        bucket.append(LexEntry(form, {pos: bf}))

    def __len__(self):
        return sum(len(b) for b in self.entries.values())

    def __contains__(self, surface):
        return self.is_known(surface)

    def forms(self):
        for bucket in self.entries.values():
            for entry in bucket:
                yield entry.form

    def exact(self, surface: str) -> LexEntry | None:
        for entry in self.entries.get(fold(surface), ()):
            if entry.form == surface:
                return entry
        return None

    def folded(self, surface: str) -> list[LexEntry]:
        return self.entries.get(fold(surface), [])

    def is_known(self, surface: str) -> bool:
        return fold(surface) in self.entries

    def lookup(self, surface: str) -> list[LexEntry]:
        """Exact-case entry if present, otherwise every case-folded match."""
        entry = self.exact(surface)
        return [entry] if entry is not None else self.folded(surface)

    def readings(self, surface: str) -> frozenset:
        tags = set()
        for entry in self.lookup(surface):
            tags |= entry.pos_set
        return frozenset(tags)

    def bf(self, form: str) -> int:
        entry = self.exact(form)
        if entry is not None:
            return entry.bf
        return sum(e.bf for e in self.folded(form))

    def merge(self, other: "Lexicon") -> "Lexicon":
        merged = Lexicon(self.tagset | other.tagset)
        for lex in (self, other):
            for bucket in lex.entries.values():
                for entry in bucket:
                    for pos, count in entry.pos_bf.items():
                        merged.add(entry.form, pos, count)
        return merged


def parse_lexicon(text: str, tagset=TAGSET) -> Lexicon:
    lex = Lexicon(tagset)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexiconError(f"line {lineno}: malformed row (expected form, pos, bf)")
        form, pos, count = parts
        if pos not in lex.tagset:
            raise LexiconError(f"line {lineno}: unknown tag {pos!r}")
        try:
            bf = int(count)
        except ValueError:
            raise LexiconError(f"line {lineno}: malformed frequency {count!r}") from None
        try:
            lex.add(form, pos, bf)
        except LexiconError as exc:
            raise LexiconError(f"line {lineno}: {exc}") from None
    return lex


def load_lexicon(path, tagset=TAGSET) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"), tagset)


def is_known(lexicon: Lexicon, surface: str) -> bool:
    return lexicon.is_known(surface)


def bf(lexicon: Lexicon, form: str) -> int:
    return lexicon.bf(form)


@dataclass(frozen=True)
class DocFreqTable:
    doc_id: str
    counts: Counter

    def __getitem__(self, form):
        return self.counts.get(fold(form), 0)

    @property
    def total(self):
        return sum(self.counts.values())

    def dump(self) -> str:
        return "".join(f"{form}\t{n}\n" for form, n in sorted(self.counts.items()))


def doc_freq(corpus: Corpus, doc_id: str, exclude: Coord | None = None) -> DocFreqTable:
    """Case-folded word counts for one document, optionally skipping one token."""
    doc = corpus.doc(doc_id)
    skip = (exclude[1], exclude[2]) if exclude is not None and exclude[0] == doc_id else None
    counts = Counter(fold(t.surface) for t in doc.tokens()
                     if t.is_word and (t.sent_index, t.tok_index) != skip)
    return DocFreqTable(doc_id, counts)
