"""Independent techniques for choosing among correction proposals.

Each guesser returns a :class:`GuesserVerdict`: either it abstains, or it
selects a nonempty subset of the proposals. Ties are never broken.
"""
from __future__ import annotations

import random
import zlib
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from .candidates import ProposalSet
from .corpus import NUMBER, PUNCT, WORD, Coord, Corpus
from .lexicon import TAGSET, Lexicon, fold

RANDOM, CG, DF, BF, CD = "random", "CG", "DF", "BF", "CD"

PUNCT_TAG, BOS, EOS = "PUNCT", "BOS", "EOS"
RULE_TAGS = TAGSET | {PUNCT_TAG, BOS, EOS}
NOUN_TAGS = frozenset({"N", "PROPER"})


class RuleError(ValueError):
    pass


class RegistrationError(ValueError):
    pass


@dataclass(frozen=True)
class GuesserVerdict:
    guesser_id: str
    answered: bool
    selected: frozenset = frozenset()

    def __post_init__(self):
        if self.answered != bool(self.selected):
            raise ValueError(f"{self.guesser_id}: answered={self.answered} with selection {set(self.selected)}")

    @classmethod
    def abstain(cls, guesser_id):
        return cls(guesser_id, False, frozenset())

    @classmethod
    def pick(cls, guesser_id, forms):
        forms = frozenset(forms)
        return cls(guesser_id, bool(forms), forms)

    def dump(self, at) -> str:
        coord = at if isinstance(at, str) else str(Coord(*at))
        return f"{coord}\t{self.guesser_id}\t{int(self.answered)}\t{','.join(sorted(self.selected))}"


def _argmax_verdict(guesser_id, scores: dict) -> GuesserVerdict:
    best = max(scores.values(), default=0)
    if best <= 0:
        return GuesserVerdict.abstain(guesser_id)
    return GuesserVerdict.pick(guesser_id, (f for f, s in scores.items() if s == best))


def error_seed(base: int, at) -> int:
    """Stable per-error seed so random choices do not depend on evaluation order."""
    return zlib.crc32(f"{base}:{Coord(*at)}".encode()) if at is not None else base


def guess_random(pset: ProposalSet, seed: int) -> GuesserVerdict:
    if not pset.proposals:
        return GuesserVerdict.abstain(RANDOM)
    rng = random.Random(seed)
    forms = pset.forms
    return GuesserVerdict.pick(RANDOM, [forms[int(rng.random() * len(forms))]])


def guess_bf(pset: ProposalSet, lexicon: Lexicon) -> GuesserVerdict:
    return _argmax_verdict(BF, {p.form: lexicon.bf(p.form) for p in pset})


def guess_df(pset: ProposalSet, corpus: Corpus, at, counts: Counter | None = None) -> GuesserVerdict:
    """Pick the proposals most frequent in the error's own document.

    ``counts`` may hold precomputed case-folded counts for the whole document;
    the error token itself is always discounted.
    """
    tok = corpus.token(at)
    if counts is None:
        doc = corpus.doc(at[0])
        counts = Counter(fold(t.surface) for t in doc.tokens() if t.is_word)
    own = fold(tok.surface) if tok.is_word else None
    scores = {}
    for p in pset:
        key = fold(p.form)
        scores[p.form] = counts.get(key, 0) - (1 if key == own else 0)
    return _argmax_verdict(DF, scores)


# --- constraint-grammar style filter ---------------------------------------

@dataclass(frozen=True)
class ConstraintRule:
    """REMOVE ``target`` when the adjacent tokens are unambiguously in the given tag sets."""
    rule_id: str
    target: str
    left: Optional[frozenset] = None
    right: Optional[frozenset] = None

    def __post_init__(self):
        if self.left is None and self.right is None:
            raise RuleError(f"{self.rule_id}: rule needs a left or right context")

    def dump(self) -> str:
        def ctx(tags):
            return "*" if tags is None else ",".join(sorted(tags))
        return f"{self.rule_id}\tREMOVE {self.target}\tIF left={ctx(self.left)}\tright={ctx(self.right)}"


def _parse_ctx(spec, side, lineno):
    prefix = side + "="
    if not spec.startswith(prefix):
        raise RuleError(f"line {lineno}: expected {prefix}...")
    body = spec[len(prefix):]
    if body == "*":
        return None
    tags = frozenset(t.strip() for t in body.split(","))
    bad = sorted(tags - RULE_TAGS)
    if bad:
        raise RuleError(f"line {lineno}: unknown tag {bad[0]!r}")
    return tags


def parse_rules(text: str) -> list[ConstraintRule]:
    """Read ``rule_id TAB REMOVE pos TAB IF left=TAGS|* TAB right=TAGS|*`` lines."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise RuleError(f"line {lineno}: expected 4 tab-separated fields")
        rule_id, action, left, right = parts
        verb, _, target = action.partition(" ")
        if verb != "REMOVE" or target not in RULE_TAGS:
            raise RuleError(f"line {lineno}: bad action {action!r}")
        if not left.startswith("IF "):
            raise RuleError(f"line {lineno}: expected 'IF left=...'")
        try:
            rules.append(ConstraintRule(rule_id, target, _parse_ctx(left[3:], "left", lineno),
                                        _parse_ctx(right, "right", lineno)))
        except RuleError as exc:
            if str(exc).startswith("line"):
                raise
            raise RuleError(f"line {lineno}: {exc}") from None
    return rules


def load_rules(path) -> list[ConstraintRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def _as_readings(token_readings):
    return {r if isinstance(r, tuple) else (r, None) for r in token_readings}


def _tags(readings):
    return {r[0] for r in readings}


def _ctx_ok(wanted, readings):
    # careful context: every surviving reading of the neighbour must fit
    return wanted is None or _tags(readings) <= wanted


def disambiguate(sentence: Iterable, rules: Iterable[ConstraintRule]) -> list[set]:
    """Remove readings by rule until nothing changes.

    ``sentence`` holds one collection of readings per token; a reading is a
    POS tag or a ``(tag, origin)`` pair. A rule never removes a token's last
    tag. Returns the surviving readings in the same form as given.
    """
    toks = [_as_readings(r) for r in sentence]
    rules = list(rules)
    bos, eos = {(BOS, None)}, {(EOS, None)}
    changed = True
    while changed:
        changed = False
        for rule in rules:
            for i, readings in enumerate(toks):
                tags = _tags(readings)
                if rule.target not in tags or len(tags) == 1:
                    continue
                left = toks[i - 1] if i > 0 else bos
                right = toks[i + 1] if i + 1 < len(toks) else eos
                if _ctx_ok(rule.left, left) and _ctx_ok(rule.right, right):
                    toks[i] = {r for r in readings if r[0] != rule.target}
                    changed = True
    return [{r if r[1] is not None else r[0] for r in readings} for readings in toks]


def token_readings(token, lexicon: Lexicon) -> frozenset:
    if token.kind == WORD:
        return lexicon.readings(token.surface) or TAGSET
    if token.kind == NUMBER:
        return frozenset({"NUM"})
    return frozenset({PUNCT_TAG})


def guess_cg(pset: ProposalSet, sentence, error_index: int, lexicon: Lexicon,
             rules: Iterable[ConstraintRule]) -> GuesserVerdict:
    """Keep the proposals whose readings survive disambiguation in context.

    ``sentence`` is the token list containing the error at ``error_index``;
    the error's readings are the union of its proposals' readings, each
    remembering the proposal it came from.
    """
    if not pset.proposals:
        return GuesserVerdict.abstain(CG)
    readings = [token_readings(t, lexicon) for t in sentence]
    readings[error_index] = {(tag, p.form) for p in pset for tag in p.readings}
    survived = disambiguate(readings, rules)[error_index]
    return GuesserVerdict.pick(CG, {origin for _, origin in survived})


# --- semantic hooks ---------------------------------------------------------

SemanticHook = Callable[[ProposalSet, list], Optional[GuesserVerdict]]


def noop_hook(pset, context_forms):
    return None


def all_nouns(pset: ProposalSet) -> bool:
    return bool(pset.proposals) and all(p.readings <= NOUN_TAGS for p in pset)


@dataclass
class GuesserRegistry:
    """Named semantic hooks; ``CD`` starts out as a hook that always abstains."""
    hooks: dict = field(default_factory=lambda: {CD: noop_hook})

    BUILTIN = (RANDOM, CG, DF, BF)

    @property
    def names(self) -> tuple:
        return self.BUILTIN + tuple(self.hooks)

    def register_semantic_hook(self, name: str, hook: SemanticHook, replace: bool = False):
        if not replace and (name in self.hooks or name in self.BUILTIN):
            raise RegistrationError(f"guesser {name!r} already registered")
        if not name.isalpha() or not name.isupper():
            raise RegistrationError(f"guesser names must be uppercase letters, got {name!r}")
        self.hooks[name] = hook
        return name

    def run_hook(self, name: str, pset: ProposalSet, context_forms: list) -> GuesserVerdict:
        # hooks only see all-noun proposal sets
        if not all_nouns(pset):
            return GuesserVerdict.abstain(name)
        verdict = self.hooks[name](pset, context_forms)
        if verdict is None or not verdict.answered:
            return GuesserVerdict.abstain(name)
        if not verdict.selected <= set(pset.forms):
            raise ValueError(f"hook {name!r} selected forms outside the proposal set")
        return GuesserVerdict.pick(name, verdict.selected)


DEFAULT_REGISTRY = GuesserRegistry()


def register_semantic_hook(name: str, hook: SemanticHook, registry: GuesserRegistry = DEFAULT_REGISTRY):
    return registry.register_semantic_hook(name, hook)


@dataclass
class GuessContext:
    """Everything the guessers need besides the proposal set, with DF caches."""
    lexicon: Lexicon
    corpus: Corpus
    rules: tuple = ()
    seed: int = 0
    registry: GuesserRegistry = field(default_factory=lambda: DEFAULT_REGISTRY)
    _doc_counts: dict = field(default_factory=dict, repr=False)

    def doc_counts(self, doc_id):
        counts = self._doc_counts.get(doc_id)
        if counts is None:
            counts = Counter(fold(t.surface) for t in self.corpus.doc(doc_id).tokens() if t.is_word)
            self._doc_counts[doc_id] = counts
        return counts

    def run(self, guesser_id: str, pset: ProposalSet, at) -> GuesserVerdict:
        if guesser_id == RANDOM:
            return guess_random(pset, error_seed(self.seed, at))
        if guesser_id == BF:
            return guess_bf(pset, self.lexicon)
        if guesser_id == DF:
            return guess_df(pset, self.corpus, at, self.doc_counts(at[0]))
        if guesser_id == CG:
            sentence = self.corpus.doc(at[0]).sentences[at[1]]
            return guess_cg(pset, sentence, at[2], self.lexicon, self.rules)
        if guesser_id in self.registry.hooks:
            sentence = self.corpus.doc(at[0]).sentences[at[1]]
            context = [t.surface for t in sentence if t.is_word and t.tok_index != at[2]]
            return self.registry.run_hook(guesser_id, pset, context)
        raise KeyError(f"unknown guesser {guesser_id!r}")

    def run_all(self, guesser_ids, pset: ProposalSet, at) -> dict:
        return {g: self.run(g, pset, at) for g in guesser_ids}
