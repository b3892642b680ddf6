"""Weighted voting over guesser verdicts.

Combinations are written the way they appear in reports: ``CG1+DF2`` gives
CG one vote and DF two, ``+H2`` makes the combination abstain on errors
shorter than four letters. A lone guesser with weight 1 may be written bare
(``DF``, ``CG+H2``); ``random baseline`` is the random guesser.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .candidates import h2_excluded
from .guessers import BF, CD, CG, DEFAULT_REGISTRY, DF, RANDOM, GuesserRegistry

GUESSER_ORDER = (CG, DF, BF, CD)
_TOKEN_RE = re.compile(r"([A-Za-z]+)(\d*)")


class CombinationError(ValueError):
    pass


def _order_key(name):
    if name in GUESSER_ORDER:
        return (0, GUESSER_ORDER.index(name), name)
    if name == RANDOM:
        return (2, 0, name)
    return (1, 0, name)


@dataclass(frozen=True)
class Combination:
    weights: tuple  # (guesser_id, weight) pairs, zero weights dropped, in report order
    use_h2: bool = False
    use_h1: bool = True

    def __post_init__(self):
        pairs = self.weights.items() if isinstance(self.weights, dict) else self.weights
        pairs = list(pairs)
        for name, w in pairs:
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise CombinationError(f"weight for {name} must be a nonnegative integer")
        pairs = sorted(((n, w) for n, w in pairs if w > 0), key=lambda kv: _order_key(kv[0]))
        if not pairs:
            raise CombinationError("combination needs at least one positive weight")
        object.__setattr__(self, "weights", tuple(pairs))

    @classmethod
    def of(cls, use_h2=False, **weights):
        return cls(dict(weights), use_h2)

    @property
    def weight_map(self) -> dict:
        return dict(self.weights)

    @property
    def guessers(self) -> tuple:
        return tuple(name for name, _ in self.weights)

    @property
    def label(self) -> str:
        parts = [f"{name}{w}" for name, w in self.weights]
        if self.use_h2:
            parts.append("H2")
        return "+".join(parts)

    @property
    def display_label(self) -> str:
        """Report label; single guessers with weight 1 print bare, as basic techniques."""
        if len(self.weights) == 1 and self.weights[0][1] == 1:
            name = self.weights[0][0]
            if name == RANDOM:
                return "random+H2" if self.use_h2 else "random baseline"
            return name + ("+H2" if self.use_h2 else "")
        return self.label

    def __str__(self):
        return self.label


def parse_combination(label: str, registry: GuesserRegistry = DEFAULT_REGISTRY) -> Combination:
    text = label.strip()
    if text in ("random baseline", "random"):
        return Combination({RANDOM: 1})
    parts = text.split("+")
    use_h2 = False
    if parts and parts[-1] == "H2":
        use_h2 = True
        parts = parts[:-1]
    if not parts or parts == [""]:
        raise CombinationError(f"empty combination {label!r}")
    weights = {}
    for part in parts:
        if part == "H2":
            raise CombinationError(f"H2 must come last in {label!r}")
        m = _TOKEN_RE.fullmatch(part)
        if m is None:
            raise CombinationError(f"malformed token {part!r} in {label!r}")
        name, digits = m.groups()
        if name not in registry.names:
            raise CombinationError(f"unknown guesser {name}")
        if name in weights:
            raise CombinationError(f"duplicate guesser {name}")
        weights[name] = int(digits) if digits else 1
    if not any(weights.values()):
        raise CombinationError(f"zero total weight in {label!r}")
    return Combination(weights, use_h2)


@dataclass(frozen=True)
class CombinedVerdict:
    answered: bool
    selected: frozenset = frozenset()
    vote_tally: dict = field(default_factory=dict)


def tally(verdicts, weights: dict) -> dict:
    votes: dict = {}
    for v in verdicts:
        w = weights.get(v.guesser_id, 0)
        if not v.answered or w == 0:
            continue
        for form in v.selected:
            votes[form] = votes.get(form, 0) + w
    return votes


def combine(verdicts, comb: Combination, pset=None) -> CombinedVerdict:
    """Weighted vote; the forms with the highest tally win, ties kept.

    Guessers that abstain or carry weight 0 cast no votes. With ``+H2`` the
    result abstains when the error (``pset.error_surface``) is shorter than
    four letters.
    """
    verdicts = list(verdicts)
    weights = comb.weight_map
    unknown = set(weights) - {v.guesser_id for v in verdicts}
    if unknown:
        raise CombinationError(f"missing verdicts for {', '.join(sorted(unknown))}")
    if comb.use_h2 and pset is not None and h2_excluded(pset.error_surface):
        return CombinedVerdict(False)
    votes = tally(verdicts, weights)
    if not votes:
        return CombinedVerdict(False, frozenset(), votes)
    best = max(votes.values())
    return CombinedVerdict(True, frozenset(f for f, n in votes.items() if n == best), votes)
