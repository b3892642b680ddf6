import csv
import io
import json
from fractions import Fraction

import pytest

import recount
from conftest import DATA
from ctxspell.antispell import antispell, dump_ledger
from ctxspell.candidates import Proposal, ProposalSet, SUBSTITUTION
from ctxspell.combiner import Combination, parse_combination
from ctxspell.corpus import Coord, dump_corpus
from ctxspell.evaluation import (EvalReport, EvalRow, EvalRun, EvalScope, EvaluationError, ErrorCase,
                                 emit_report, evaluate, prepare_cases, score, totals, weight_grid,
                                 weight_search)
from ctxspell.guessers import GuesserVerdict

LABELS = ["random baseline", "random+H2", "CG", "CG+H2", "BF", "BF+H2", "DF", "DF+H2",
          "CG1+DF2", "CG1+DF2+H2", "CG1+DF1+BF1", "CG1+DF1+BF1+H2", "CG2+BF1"]
GUESSERS = ["random", "CG", "DF", "BF"]


def _case(i, gold, forms, selected, surface="abcd"):
    pset = ProposalSet(surface, None, tuple(Proposal(f, SUBSTITUTION, frozenset({"N"})) for f in forms))
    verdict = GuesserVerdict.pick("CG", selected)
    return ErrorCase(0, Coord("d", 0, i), surface, gold, pset, len(forms), {"CG": verdict})


def test_hand_example():
    cases = [_case(0, "boss", ["boss", "boys"], ["boss"]),
             _case(1, "boys", ["boss", "boys", "bop"], ["boss", "boys"]),
             _case(2, "bop", ["bop", "boss"], ["boss"]),
             _case(3, "boss", ["boss", "boys"], [])]
    row = score(cases, parse_combination("CG"))
    assert (row.coverage_pct, row.precision_pct, row.avg_str) == ("75.00", "66.67", "1.33")
    assert row.coverage == Fraction(75) and row.avg_proposals == Fraction(4, 3)


def test_zero_proposal_errors_count_against_coverage():
    cases = [_case(0, "boss", ["boss"], ["boss"]), _case(1, "qqq", [], [])]
    cases[1].verdicts = {}
    row = score(cases, parse_combination("CG"))
    assert (row.total, row.answered) == (2, 1)


def test_empty_scope():
    with pytest.raises(EvaluationError, match="empty scope"):
        score([_case(0, "a", ["a"], ["a"], surface="ab")], parse_combination("CG"), EvalScope.named("h2"))
    with pytest.raises(EvaluationError):
        EvalScope(include_real_word_errors=True)
    with pytest.raises(EvaluationError):
        EvalScope.named("everything")


def test_half_up_rounding():
    assert EvalRow("x", 8, 8, 1, 8).precision_pct == "12.50"
    assert EvalRow("x", 3, 3, 2, 3).precision_pct == "66.67"
    assert EvalRow("x", 200, 200, 1, 200).precision_pct == "0.50"
    assert EvalRow("x", 800, 800, 1, 800).precision_pct == "0.13"  # 0.125 rounds up


@pytest.fixture(scope="module")
def ledgers(corpus, lexicon, tmp_path_factory):
    out = tmp_path_factory.mktemp("ledgers")
    runs = []
    for seed in (1, 2, 3):
        run = antispell(corpus, lexicon, 0.05, seed)
        (out / f"ledger_seed{seed}.tsv").write_text(dump_ledger(run.errors))
        (out / f"corpus_seed{seed}.tsv").write_text(dump_corpus(run.corpus_out))
        runs.append(run)
    return out, runs


@pytest.fixture(scope="module")
def oracle():
    return recount.Recount(DATA / "lexicon.tsv", DATA / "rules.tsv")


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_matches_recount_on_each_ledger(ledgers, oracle, lexicon, rules, seed):
    out, runs = ledgers
    run = runs[seed - 1]
    cases = prepare_cases([EvalRun.from_error_run(run)], lexicon, GUESSERS, rules)
    rc = oracle.cases(recount.read_ledger(out / f"ledger_seed{seed}.tsv"),
                      recount.read_dump(out / f"corpus_seed{seed}.tsv"), seed)
    for scope in ("all", "multi", "h2"):
        for label in LABELS:
            row = score(cases, parse_combination(label), EvalScope.named(scope))
            assert (row.coverage_pct, row.precision_pct, row.avg_str) == recount.score(rc, label, scope), \
                (seed, scope, label)


def test_evaluate_wrapper_matches_prepared_cases(ledgers, lexicon, rules):
    _, runs = ledgers
    row = evaluate(runs, "CG1+DF2", lexicon=lexicon, rules=rules)
    cases = prepare_cases([EvalRun.from_error_run(r) for r in runs], lexicon, ["CG", "DF"], rules)
    assert row == score(cases, parse_combination("CG1+DF2"))


@pytest.fixture(scope="module")
def cases8(corpus, lexicon, rules):
    runs = [EvalRun.from_error_run(antispell(corpus, lexicon, 0.05, s)) for s in range(1, 9)]
    return runs, prepare_cases(runs, lexicon, GUESSERS, rules)


def test_random_baseline_properties(cases8):
    _, cases = cases8
    rnd = parse_combination("random baseline")
    every_has_proposals = [c for c in cases if c.pset.proposals]
    assert score(every_has_proposals, rnd).coverage_pct == "100.00"
    all_row = score(cases, rnd)
    multi_row = score(cases, rnd, EvalScope.named("multi"))
    assert multi_row.precision < all_row.precision


def test_guessers_beat_random(cases8):
    _, cases = cases8
    base = score(cases, parse_combination("random baseline")).precision
    for label in ("CG", "BF", "DF", "CG1+DF2"):
        assert score(cases, parse_combination(label)).precision > base


def test_h2_never_raises_coverage(cases8):
    _, cases = cases8
    for weights, _ in weight_grid(GUESSERS):
        for scope in ("all", "multi"):
            s = EvalScope.named(scope)
            base = score(cases, Combination(weights), s)
            h2 = score(cases, Combination(weights, True), s)
            assert h2.coverage <= base.coverage


def test_bf_df_single_proposal_without_ties(cases8, lexicon):
    _, cases = cases8
    no_tie = [c for c in cases if c.pset.proposals
              and len({lexicon.bf(f) for f in c.pset.forms}) == len(c.pset)]
    row = score(no_tie, parse_combination("BF"))
    assert row.avg_str == "1.00" and row.avg_proposals == 1
    df_single = [c for c in cases if len(c.verdicts.get("DF", GuesserVerdict.abstain("DF")).selected) <= 1]
    assert score(df_single, parse_combination("DF")).avg_proposals in (0, 1)


def test_totals(cases8):
    runs, cases = cases8
    t = totals(cases, runs)
    assert t["errors"] == sum(len(r.errors) for r in runs)
    assert t["non real-word errors"] == len(cases)
    assert t["long word errors (H2)"] <= t["non real-word errors"]
    assert t["words with multiple proposals"] == sum(1 for c in cases if len(c.pset) > 1)


def test_weight_grid_sizes():
    assert len(weight_grid(["CG", "DF"])) == 16
    assert len(weight_grid(["CG", "DF", "BF"])) == 52


def test_weight_search_two_guessers(cases8):
    _, cases = cases8
    ranked = weight_search(cases, ("CG", "DF"))
    assert len(ranked) == 16
    keys = [r.rank_key() for _, r in ranked]
    assert keys == sorted(keys)
    top_comb, top_row = ranked[0]
    assert parse_combination(top_row.label) == top_comb


def test_ranking_invariant_under_duplication(corpus, lexicon, rules):
    runs = [EvalRun.from_error_run(antispell(corpus, lexicon, 0.05, s)) for s in (1, 2)]
    once = prepare_cases(runs, lexicon, ["CG", "DF", "BF"], rules)
    twice = prepare_cases(runs + runs, lexicon, ["CG", "DF", "BF"], rules)
    order1 = [c.label for c, _ in weight_search(once)]
    order2 = [c.label for c, _ in weight_search(twice)]
    assert order1 == order2


def _report():
    rows = [EvalRow("random baseline", 2000, 2000, 1087, 2000), EvalRow("CG1+DF2+H2", 3, 2, 1, 3)]
    return EvalReport(rows, EvalScope(), "train")


def test_emit_table():
    text = emit_report(_report(), "table").decode()
    lines = text.splitlines()
    assert lines[1].split() == ["Cover.%", "Prec.%", "#", "prop."]
    assert lines[2].split() == ["random", "baseline", "100.00", "54.35", "1.00"]
    assert " ".join(lines[3].split()) == "CG1+DF2+H2 66.67 50.00 1.50"


def test_emit_paper_row():
    row = EvalRow("random baseline", 10000, 10000, 5436, 10000)
    text = emit_report(EvalReport([row]), "table").decode().splitlines()[-1]
    assert " ".join(text.split()) == "random baseline 100.00 54.36 1.00"


def test_csv_and_json_agree():
    rep = _report()
    rows_csv = list(csv.DictReader(io.StringIO(emit_report(rep, "csv").decode())))
    rows_json = json.loads(emit_report(rep, "json"))
    assert list(rows_csv[0]) == ["label", "coverage", "precision", "avg_proposals"]
    for a, b in zip(rows_csv, rows_json):
        assert a["label"] == b["label"]
        for k in ("coverage", "precision", "avg_proposals"):
            assert float(a[k]) == b[k]


def test_emit_errors():
    with pytest.raises(EvaluationError):
        emit_report(_report(), "xml")
    with pytest.raises(EvaluationError):
        emit_report(EvalReport([]), "csv")
