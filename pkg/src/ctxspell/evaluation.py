"""Coverage / precision / remaining-proposals scoring against a gold ledger.

Every non-word error in scope gets its proposal set (after H1) and the
verdict of every guesser computed once; combinations are then scored from
those cached verdicts, which keeps the weight grid search cheap.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import zlib
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .antispell import ErrorRun
from .candidates import apply_h1, h2_excluded, propose
from .combiner import Combination, combine, parse_combination
from .corpus import Corpus
from .guessers import BF, CG, DEFAULT_REGISTRY, DF, GuessContext, GuesserRegistry
from .lexicon import Lexicon, fold

SCOPES = ("all", "multi", "h2")
FORMATS = ("csv", "json", "table")
COLUMNS = ("Cover.%", "Prec.%", "# prop.")


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class EvalScope:
    h2_only_long: bool = False
    multiple_proposals_only: bool = False
    include_real_word_errors: bool = False

    def __post_init__(self):
        if self.include_real_word_errors:
            raise EvaluationError("real-word errors cannot be scored")

    @classmethod
    def named(cls, name: str) -> "EvalScope":
        if name not in SCOPES:
            raise EvaluationError(f"unknown scope {name!r} (choose from {', '.join(SCOPES)})")
        return cls(h2_only_long=name == "h2", multiple_proposals_only=name == "multi")

    @property
    def name(self) -> str:
        if self.h2_only_long and self.multiple_proposals_only:
            return "h2multi"
        if self.h2_only_long:
            return "h2"
        return "multi" if self.multiple_proposals_only else "all"

    def admits(self, case: "ErrorCase") -> bool:
        if self.h2_only_long and h2_excluded(case.surface):
            return False
        if self.multiple_proposals_only and len(case.pset) < 2:
            return False
        return True


@dataclass(frozen=True)
class EvalRun:
    """A corrupted corpus together with its gold errors."""
    corpus: Corpus
    errors: tuple
    seed: int = 0

    @classmethod
    def from_error_run(cls, run: ErrorRun) -> "EvalRun":
        return cls(run.corpus_out, run.errors, run.seed)


@dataclass
class ErrorCase:
    run_seed: int
    at: tuple
    surface: str
    gold: str
    pset: object
    raw_count: int
    verdicts: dict = field(default_factory=dict)

    @property
    def key(self):
        return (self.run_seed, self.at)

    def is_correct(self, selected) -> bool:
        gold = fold(self.gold)
        return any(fold(f) == gold for f in selected)


def _half_up(value: Fraction) -> str:
    d = Decimal(value.numerator) / Decimal(value.denominator)
    return str(d.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class EvalRow:
    label: str
    total: int
    answered: int
    correct: int
    selected_sum: int

    @property
    def coverage(self) -> Fraction:
        return Fraction(100 * self.answered, self.total) if self.total else Fraction(0)

    @property
    def precision(self) -> Fraction:
        return Fraction(100 * self.correct, self.answered) if self.answered else Fraction(0)

    @property
    def avg_proposals(self) -> Fraction:
        return Fraction(self.selected_sum, self.answered) if self.answered else Fraction(0)

    @property
    def coverage_pct(self) -> str:
        return _half_up(self.coverage)

    @property
    def precision_pct(self) -> str:
        return _half_up(self.precision)

    @property
    def avg_str(self) -> str:
        return _half_up(self.avg_proposals)

    def rank_key(self):
        return (-self.precision, -self.coverage, self.avg_proposals, self.label)

    def as_dict(self) -> dict:
        return {"label": self.label, "coverage": float(self.coverage_pct),
                "precision": float(self.precision_pct), "avg_proposals": float(self.avg_str)}


@dataclass
class EvalReport:
    rows: list
    scope: EvalScope = field(default_factory=EvalScope)
    corpus_tag: str = "none"
    totals: dict = field(default_factory=dict)


def prepare_cases(runs, lexicon: Lexicon, guesser_ids, rules=(), seed: int = 0,
                  registry: GuesserRegistry = DEFAULT_REGISTRY, use_h1: bool = True) -> list:
    """Proposal sets and guesser verdicts for every non-word error, in ledger order."""
    cases = []
    for run in runs:
        ctx = GuessContext(lexicon, run.corpus, tuple(rules),
                           zlib.crc32(f"{seed}/{run.seed}".encode()), registry)
        for err in sorted(run.errors, key=lambda e: (e.at[0], e.at[1], e.at[2])):
            surface = run.corpus.token(err.at).surface
            if surface != err.corrupted:
                raise EvaluationError(f"ledger/corpus mismatch at {err.at}")
            if err.became_real_word or lexicon.is_known(surface):
                continue
            raw = propose(lexicon, surface, err.at)
            pset = apply_h1(raw) if use_h1 else raw
            case = ErrorCase(run.seed, err.at, surface, err.original, pset, len(raw))
            if pset.proposals:
                case.verdicts = ctx.run_all(guesser_ids, pset, err.at)
            cases.append(case)
    return cases


def score(cases, comb: Combination, scope: EvalScope = EvalScope(), label: str | None = None) -> EvalRow:
    """Score one combination over prepared cases."""
    total = answered = correct = selected_sum = 0
    for case in cases:
        if not scope.admits(case):
            continue
        total += 1
        if not case.pset.proposals:
            continue
        missing = set(comb.guessers) - set(case.verdicts)
        if missing:
            raise EvaluationError(f"no verdicts for {', '.join(sorted(missing))}")
        verdict = combine([case.verdicts[g] for g in comb.guessers], comb, case.pset)
        if not verdict.answered:
            continue
        answered += 1
        selected_sum += len(verdict.selected)
        correct += case.is_correct(verdict.selected)
    if total == 0:
        raise EvaluationError("empty scope")
    return EvalRow(label or comb.display_label, total, answered, correct, selected_sum)


def evaluate(runs, technique, scope: EvalScope = EvalScope(), *, lexicon: Lexicon, rules=(),
             seed: int = 0, registry: GuesserRegistry = DEFAULT_REGISTRY) -> EvalRow:
    """Convenience wrapper: prepare cases for the technique's guessers and score it."""
    comb = technique if isinstance(technique, Combination) else parse_combination(technique, registry)
    runs = [EvalRun.from_error_run(r) if isinstance(r, ErrorRun) else r for r in runs]
    cases = prepare_cases(runs, lexicon, comb.guessers, rules, seed, registry, comb.use_h1)
    return score(cases, comb, scope)


def totals(cases, runs) -> dict:
    """Error and proposal counts per corpus: words, errors, proposals, multi-proposal and long-word subsets."""
    words = sum(1 for r in runs for t in r.corpus.tokens() if t.is_word)
    errors = sum(len(r.errors) for r in runs)
    long_cases = [c for c in cases if not h2_excluded(c.surface)]
    return {
        "words": words,
        "errors": errors,
        "non real-word errors": len(cases),
        "proposals": sum(c.raw_count for c in cases),
        "words with multiple proposals": sum(1 for c in cases if len(c.pset) > 1),
        "long word errors (H2)": len(long_cases),
        "proposals for long words (H2)": sum(c.raw_count for c in long_cases),
        "long word errors (H2) with multiple proposals": sum(1 for c in long_cases if len(c.pset) > 1),
    }


def weight_grid(guesser_ids, weight_range=(0, 1, 2), with_h2: bool = True) -> list:
    """Every weight vector with at least one positive weight, with and without H2."""
    combos = []
    for vec in itertools.product(weight_range, repeat=len(guesser_ids)):
        if not any(vec):
            continue
        for h2 in ((False, True) if with_h2 else (False,)):
            combos.append((dict(zip(guesser_ids, vec)), h2))
    return combos


def weight_search(cases, guesser_ids=(CG, DF, BF), weight_range=(0, 1, 2),
                  scope: EvalScope = EvalScope()) -> list:
    """Rank every weight vector: precision desc, coverage desc, fewer proposals, label."""
    if not guesser_ids:
        raise EvaluationError("weight search needs at least one guesser")
    results = []
    for weights, h2 in weight_grid(guesser_ids, weight_range):
        comb = Combination(weights, h2)
        results.append((comb, score(cases, comb, scope, label=comb.label)))
    results.sort(key=lambda cr: cr[1].rank_key())
    return results


def emit_report(report: EvalReport, fmt: str = "table") -> bytes:
    if fmt not in FORMATS:
        raise EvaluationError(f"unknown format {fmt!r}")
    if not report.rows:
        raise EvaluationError("report has no rows")
    if fmt == "json":
        return (json.dumps([r.as_dict() for r in report.rows], indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "coverage", "precision", "avg_proposals"])
        for r in report.rows:
            w.writerow([r.label, r.coverage_pct, r.precision_pct, r.avg_str])
        return buf.getvalue().encode()
    width = max(24, max(len(r.label) for r in report.rows) + 2)
    lines = [f"# corpus: {report.corpus_tag}  scope: {report.scope.name}",
             f"{'':<{width}}{COLUMNS[0]:>9}{COLUMNS[1]:>9}{COLUMNS[2]:>9}"]
    for r in report.rows:
        lines.append(f"{r.label:<{width}}{r.coverage_pct:>9}{r.precision_pct:>9}{r.avg_str:>9}")
    return ("\n".join(lines) + "\n").encode()


def emit_totals(totals_by_tag: dict) -> bytes:
    """Table-1 style block; one column per corpus tag."""
    tags = list(totals_by_tag)
    keys = list(next(iter(totals_by_tag.values())))
    width = max(len(k) for k in keys) + 2
    lines = [f"{'':<{width}}" + "".join(f"{t:>10}" for t in tags)]
    for k in keys:
        lines.append(f"{k:<{width}}" + "".join(f"{totals_by_tag[t][k]:>10}" for t in tags))
    return ("\n".join(lines) + "\n").encode()
