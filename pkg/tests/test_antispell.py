import math
import random

import pytest

from oracles import damerau
from ctxspell.antispell import (InjectedError, antispell, apply_ledger, classify_errors, corrupt, dump_ledger,
                                parse_ledger)
from ctxspell.corpus import Coord, Corpus, build_document, dump_corpus
from ctxspell.lexicon import parse_lexicon


def test_same_seed_same_run(corpus, lexicon):
    a = antispell(corpus, lexicon, 0.05, 7)
    b = antispell(corpus, lexicon, 0.05, 7)
    assert a.errors == b.errors
    assert dump_corpus(a.corpus_out) == dump_corpus(b.corpus_out)
    assert antispell(corpus, lexicon, 0.05, 8).errors != a.errors


def test_rate_zero(corpus, lexicon):
    run = antispell(corpus, lexicon, 0.0, 1)
    assert run.errors == ()
    assert dump_corpus(run.corpus_out) == dump_corpus(corpus)
    assert classify_errors(run) == (0, 0)


@pytest.mark.parametrize("rate", [-0.1, 1.0, 2])
def test_bad_rate(corpus, lexicon, rate):
    with pytest.raises(ValueError):
        antispell(corpus, lexicon, rate, 1)


def test_empty_corpus(lexicon):
    with pytest.raises(ValueError):
        antispell(Corpus(()), lexicon, 0.05, 1)


def test_errors_are_one_edit_away_and_recorded(corpus, lexicon):
    for seed in range(1, 6):
        run = antispell(corpus, lexicon, 0.05, seed)
        for e in run.errors:
            assert damerau(e.original.lower(), e.corrupted.lower()) == 1
            assert corpus.token(e.at).surface == e.original
            assert run.corpus_out.token(e.at).surface == e.corrupted
            assert e.became_real_word == lexicon.is_known(e.corrupted)


def test_only_known_words_change(corpus, lexicon):
    run = antispell(corpus, lexicon, 0.3, 3)
    hit = {e.at for e in run.errors}
    for before, after in zip(corpus.tokens(), run.corpus_out.tokens()):
        if before.coord in hit:
            assert before.is_word and lexicon.is_known(before.surface)
        else:
            assert before.surface == after.surface and before.pre == after.pre


def test_unknown_words_untouched():
    lex = parse_lexicon("the\tDET\t1\ncat\tN\t1\n")
    doc = build_document("the zorp cat 42 , blick", "d")
    run = antispell(Corpus((doc,)), lex, 0.99, 2)
    out = run.corpus_out.doc("d")
    for tok in out.tokens():
        if tok.surface in ("zorp", "42", ",", "blick"):
            assert tok.surface == doc.token(tok.sent_index, tok.tok_index).surface
    assert {e.original for e in run.errors} <= {"the", "cat"}


def test_error_count_within_binomial_bound(corpus, lexicon):
    eligible = sum(1 for t in corpus.tokens() if t.is_word and lexicon.is_known(t.surface))
    rate = 0.5
    sigma = math.sqrt(eligible * rate * (1 - rate))
    for seed in (1, 2, 3):
        n = len(antispell(corpus, lexicon, rate, seed).errors)
        assert abs(n - eligible * rate) <= 4 * sigma


def test_corrupt_changes_word_and_keeps_word_shape():
    rng = random.Random(0)
    for word in ["a", "I", "it", "boss", "co-operate", "isn't"]:
        for _ in range(50):
            out, op = corrupt(word, rng)
            assert out.lower() != word.lower()
            assert damerau(word, out) == 1


def test_operations_roughly_uniform(corpus, lexicon):
    counts = {}
    for seed in range(1, 21):
        for e in antispell(corpus, lexicon, 0.05, seed).errors:
            counts[e.op] = counts.get(e.op, 0) + 1
    total = sum(counts.values())
    assert set(counts) == {"insertion", "deletion", "substitution", "transposition"}
    for op, n in counts.items():
        # each op is drawn with probability 1/4 before rejection; transpositions of one-letter
        # words and doubled letters are rejected more, so allow a generous band
        assert 0.15 * total < n < 0.35 * total, (op, n)


def _err(doc, tok, original, corrupted, real):
    return InjectedError(Coord(doc, 0, tok), original, corrupted, "substitution", real)


def test_classify_hand_built():
    errors = [_err("d", 0, "cat", "bat", True), _err("d", 1, "the", "tho", False),
              _err("d", 2, "dog", "dot", True), _err("d", 3, "eat", "eaq", False),
              _err("d", 4, "sun", "sux", False)]
    assert classify_errors(errors) == (2, 3)
    lex = parse_lexicon("bat\tN\t1\n")
    assert classify_errors(errors, lex) == (1, 4)


def test_real_word_fraction_band(corpus, lexicon):
    real = non = 0
    for seed in range(1, 9):
        r, n = classify_errors(antispell(corpus, lexicon, 0.05, seed))
        real, non = real + r, non + n
    assert 0.10 <= real / (real + non) <= 0.40


def test_ledger_round_trip(corpus, lexicon):
    run = antispell(corpus, lexicon, 0.05, 4)
    text = dump_ledger(run.errors)
    back = parse_ledger(text, lexicon)
    assert back == run.errors
    rebuilt = apply_ledger(corpus, back)
    assert dump_corpus(rebuilt) == dump_corpus(run.corpus_out)


def test_ledger_errors(corpus, lexicon):
    with pytest.raises(ValueError, match="line 1"):
        parse_ledger("p01\t0\t0\tThe\n", lexicon)
    bad = parse_ledger("p01\t0\t0\tA\tB\tsubstitution\n", lexicon)
    with pytest.raises(ValueError, match="mismatch"):
        apply_ledger(corpus, bad)
