"""Synthetic error injection ("antispell").

Every word token the lexicon knows is corrupted independently with
probability ``rate`` by one random Damerau operation. Randomness comes from
:class:`random.Random` (Mersenne Twister MT19937) seeded with the run seed;
only ``Random.random()`` is called, and integers are drawn as
``int(random() * n)``, so ledgers are reproducible across platforms and
Python versions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .candidates import DELETION, INSERTION, SUBSTITUTION, TRANSPOSITION
from .corpus import WORD_RE, Coord, Corpus
from .kernels import ASCII_LOWER
from .lexicon import Lexicon, fold

OPS = (INSERTION, DELETION, SUBSTITUTION, TRANSPOSITION)
DEFAULT_RATE = 1 / 20
MAX_TRIES = 64


@dataclass(frozen=True)
class InjectedError:
    at: Coord
    original: str
    corrupted: str
    op: str
    became_real_word: bool


@dataclass(frozen=True)
class ErrorRun:
    seed: int
    rate: float
    errors: tuple
    corpus_out: Corpus


def _pick(rng, n):
    return int(rng.random() * n)


def corrupt(word: str, rng: random.Random, alphabet: str = ASCII_LOWER) -> tuple[str, str] | None:
    """Apply one random Damerau operation to ``word``.

    Resamples until the result differs from ``word`` beyond case and is still
    a single word token; returns None if no such edit was found (e.g. for
    one-letter words whose every edit is rejected, which is unlikely).
    """
    n = len(word)
    for _ in range(MAX_TRIES):
        op = OPS[_pick(rng, len(OPS))]
        if op == INSERTION:
            i = _pick(rng, n + 1)
            out = word[:i] + alphabet[_pick(rng, len(alphabet))] + word[i:]
        elif op == DELETION:
            i = _pick(rng, n)
            out = word[:i] + word[i + 1:]
        elif op == SUBSTITUTION:
            i = _pick(rng, n)
            out = word[:i] + alphabet[_pick(rng, len(alphabet))] + word[i + 1:]
        else:
            if n < 2:
                continue
            i = _pick(rng, n - 1)
            out = word[:i] + word[i + 1] + word[i] + word[i + 2:]
        if fold(out) != fold(word) and WORD_RE.fullmatch(out):
            return out, op
    return None


def antispell(corpus: Corpus, lexicon: Lexicon, rate: float = DEFAULT_RATE, seed: int = 0) -> ErrorRun:
    if not 0 <= rate < 1:
        raise ValueError(f"rate must be in [0, 1), got {rate}")
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    rng = random.Random(seed)
    errors = []
    for tok in corpus.tokens():
        if not tok.is_word or not lexicon.is_known(tok.surface):
            continue
        if rng.random() >= rate:
            continue
        res = corrupt(tok.surface, rng)
        if res is None:
            continue
        out, op = res
        errors.append(InjectedError(tok.coord, tok.surface, out, op, lexicon.is_known(out)))
    corpus_out = corpus.with_surfaces({e.at: e.corrupted for e in errors})
    return ErrorRun(seed, rate, tuple(errors), corpus_out)


def classify_errors(errors, lexicon: Lexicon | None = None) -> tuple[int, int]:
    """(real-word count, non-word count).

    ``errors`` is an :class:`ErrorRun` or an iterable of errors. With a
    lexicon, real-word status is recomputed instead of read from the record.
    """
    if isinstance(errors, ErrorRun):
        errors = errors.errors
    real = non = 0
    for e in errors:
        is_real = lexicon.is_known(e.corrupted) if lexicon is not None else e.became_real_word
        if is_real:
            real += 1
        else:
            non += 1
    return real, non


def dump_ledger(errors) -> str:
    """Gold ledger: ``doc_id TAB sent TAB tok TAB original TAB corrupted TAB op``."""
    return "".join(f"{e.at.doc_id}\t{e.at.sent}\t{e.at.tok}\t{e.original}\t{e.corrupted}\t{e.op}\n"
                   for e in errors)


def parse_ledger(text: str, lexicon: Lexicon) -> tuple:
    errors = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 6:
            raise ValueError(f"line {lineno}: expected 6 fields, got {len(parts)}")
        doc_id, sent, tok, original, corrupted, op = parts
        errors.append(InjectedError(Coord(doc_id, int(sent), int(tok)), original, corrupted, op,
                                    lexicon.is_known(corrupted)))
    return tuple(errors)


def load_ledger(path, lexicon: Lexicon) -> tuple:
    return parse_ledger(Path(path).read_text(encoding="utf-8"), lexicon)


def apply_ledger(corpus: Corpus, errors) -> Corpus:
    """Re-create the corrupted corpus from a clean one and its ledger."""
    for e in errors:
        found = corpus.token(e.at).surface
        if found != e.original:
            raise ValueError(f"ledger mismatch at {e.at}: corpus has {found!r}, ledger {e.original!r}")
    return corpus.with_surfaces({e.at: e.corrupted for e in errors})
