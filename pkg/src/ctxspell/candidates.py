"""Correction proposals for non-words, plus the H1 and H2 heuristics."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .kernels import ASCII_LOWER, damerau_neighbors
from .lexicon import Lexicon, fold

CASE_ONLY, SUBSTITUTION, INSERTION, DELETION, TRANSPOSITION = (
    "case_only", "substitution", "insertion", "deletion", "transposition")
EDIT_ORDER = (CASE_ONLY, SUBSTITUTION, INSERTION, DELETION, TRANSPOSITION)

H2_MIN_LETTERS = 4


class NotANonWord(ValueError):
    """propose() was called on a surface the lexicon already knows."""


@dataclass(frozen=True)
class Proposal:
    form: str
    edit: str
    readings: frozenset


@dataclass(frozen=True)
class ProposalSet:
    error_surface: str
    at: tuple | None = None
    proposals: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.proposals)

    def __iter__(self):
        return iter(self.proposals)

    @property
    def forms(self) -> tuple:
        return tuple(p.form for p in self.proposals)

    def get(self, form):
        for p in self.proposals:
            if p.form == form:
                return p
        return None

    def dump(self) -> str:
        return f"{self.error_surface}\t{','.join(self.forms)}"


def classify_edit(source: str, target: str) -> str | None:
    """Name the single Damerau operation turning ``source`` into ``target``.

    Returns None when the two strings are not one operation apart.
    """
    if source == target:
        return CASE_ONLY
    n, m = len(source), len(target)
    if m == n + 1:
        i = 0
        while i < n and source[i] == target[i]:
            i += 1
        return INSERTION if source[i:] == target[i + 1:] else None
    if m == n - 1:
        return DELETION if classify_edit(target, source) == INSERTION else None
    if m != n:
        return None
    diff = [i for i in range(n) if source[i] != target[i]]
    if len(diff) == 1:
        return SUBSTITUTION
    if (len(diff) == 2 and diff[1] == diff[0] + 1
            and source[diff[0]] == target[diff[1]] and source[diff[1]] == target[diff[0]]):
        return TRANSPOSITION
    return None


def propose(lexicon: Lexicon, error_surface: str, at=None, alphabet: str = ASCII_LOWER) -> ProposalSet:
    """Dictionary forms one Damerau edit from the case-folded error.

    The error itself (case-folded) is also looked up, which yields
    ``case_only`` proposals. Each proposal keeps its dictionary casing and
    the POS tags of that casing as readings.
    """
    if lexicon.is_known(error_surface):
        raise NotANonWord(f"{error_surface!r} is in the lexicon")
    key = fold(error_surface)
    found = {}
    for cand in damerau_neighbors(key, alphabet) | {key}:
        for entry in lexicon.folded(cand):
            kind = classify_edit(key, cand)
            prev = found.get(entry.form)
            if prev is None or EDIT_ORDER.index(kind) < EDIT_ORDER.index(prev[0]):
                found[entry.form] = (kind, entry.pos_set)
    proposals = tuple(Proposal(form, kind, readings)
                      for form, (kind, readings) in sorted(found.items()))
    return ProposalSet(error_surface, at, proposals)


def _upper_initial(s: str) -> bool:
    return s[:1].isupper()


def apply_h1(pset: ProposalSet) -> ProposalSet:
    """Drop uppercase-initial proposals for a lowercase-initial error.

    Only applies when at least one lowercase-initial proposal remains, so a
    nonempty set is never emptied.
    """
    if _upper_initial(pset.error_surface):
        return pset
    lower = tuple(p for p in pset.proposals if not _upper_initial(p.form))
    if not lower or len(lower) == len(pset.proposals):
        return pset
    return replace(pset, proposals=lower)


def letter_count(surface: str) -> int:
    return sum(1 for c in surface if c.isalpha())


def h2_excluded(error_surface: str) -> bool:
    """True for errors too short to disambiguate (fewer than four letters)."""
    return letter_count(error_surface) < H2_MIN_LETTERS
