import random
import string

import pytest
from hypothesis import given, settings, strategies as st

from oracles import VectorDamerau, adds_only_letters, brute_neighbors, damerau
from ctxspell.candidates import (CASE_ONLY, DELETION, INSERTION, SUBSTITUTION, TRANSPOSITION, NotANonWord,
                                 Proposal, ProposalSet, apply_h1, classify_edit, h2_excluded, propose)
from ctxspell.kernels import damerau_neighbors
from ctxspell.lexicon import parse_lexicon
from ctxspell import _pykernels

AZ = string.ascii_lowercase


def test_bos_neighbours_contain_paper_proposals():
    n = damerau_neighbors("bos")
    assert {"boss", "boys", "bop", "bose", "os", "bs", "bo", "obs", "bso"} <= n
    assert "bos" not in n


def test_single_letter_word():
    n = damerau_neighbors("a")
    assert "" in n
    assert all(len(s) in (0, 1, 2) for s in n)
    # 1 deletion + 51 distinct insertions + 25 substitutions, no transpositions
    assert len(n) == 1 + 51 + 25


def test_word_neighbour_count():
    # edit operations as listed: 4 deletions, 5*26 insertions, 4*25 substitutions, 3 transpositions
    ops = ([("del", i) for i in range(4)] + [("ins", i, c) for i in range(5) for c in AZ]
           + [("sub", i, c) for i in range(4) for c in AZ if c != "word"[i]]
           + [("swap", i) for i in range(3) if "word"[i] != "word"[i + 1]])
    assert len(ops) == 237
    # doubling a letter is reachable from two insertion slots, so the set is smaller
    assert len(damerau_neighbors("word")) == 233


@pytest.mark.parametrize("word", ["", "a", "ab", "aa", "abc", "aba", "bca", "ccc", "abca"])
def test_neighbours_equal_brute_force_scan(word):
    alphabet = "abc"
    assert damerau_neighbors(word, alphabet) == brute_neighbors(word, alphabet)


def test_word_neighbours_all_at_distance_one():
    for s in damerau_neighbors("word"):
        assert damerau("word", s) == 1


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abcd", max_size=7), st.text(alphabet="abcd", max_size=7))
def test_backends_agree(a, b):
    assert damerau_neighbors(a, "abcd") == _pykernels.damerau_neighbors(a, "abcd")
    from ctxspell.kernels import osa_distance
    assert osa_distance(a, b) == _pykernels.osa_distance(a, b) == damerau(a, b)


def test_bos_example(example_lexicon):
    pset = propose(example_lexicon, "bos")
    assert set(pset.forms) == {"boss", "boys", "bop", "Bose"}
    assert pset.get("Bose").readings == {"PROPER"}
    assert pset.get("bop").readings == {"V"}
    assert pset.get("boss").edit == INSERTION
    assert pset.get("bop").edit == SUBSTITUTION


def test_bos_with_fixture_lexicon(lexicon):
    pset = propose(lexicon, "bos")
    assert {"boss", "boys", "bop", "Bose"} <= set(pset.forms)


def test_qqq_has_no_proposals(lexicon):
    assert len(propose(lexicon, "qqq")) == 0


def test_case_only_proposal():
    lex = parse_lexicon("Bose\tPROPER\t1\n")
    # "bose" itself is known (case-folded), so a case-only proposal needs a non-folding error
    with pytest.raises(NotANonWord):
        propose(lex, "bose")
    assert classify_edit("bose", "bose") == CASE_ONLY


def test_known_word_is_a_contract_violation(example_lexicon):
    with pytest.raises(NotANonWord):
        propose(example_lexicon, "boss")


def test_classify_edit():
    assert classify_edit("bos", "boss") == INSERTION
    assert classify_edit("boss", "bos") == DELETION
    assert classify_edit("bos", "bop") == SUBSTITUTION
    assert classify_edit("bos", "bso") == TRANSPOSITION
    assert classify_edit("bos", "xyz") is None
    assert classify_edit("bos", "bossy") is None


def test_propose_matches_vector_oracle_on_fixture_sample(lexicon):
    rng = random.Random(11)
    forms = sorted(lexicon.forms())
    sample = rng.sample(forms, 2000)
    lex = parse_lexicon("".join(f"{f}\t{sorted(lexicon.readings(f))[0]}\t1\n" for f in sample))
    oracle = VectorDamerau([f.lower() for f in sample])
    by_folded = {}
    for f in sample:
        by_folded.setdefault(f.lower(), set()).add(f)
    checked = 0
    while checked < 150:
        w = rng.choice(sample).lower()
        i = rng.randrange(len(w) + 1)
        q = w[:i] + rng.choice(AZ) + w[i + 1:]
        if not q or lex.is_known(q):
            continue
        want = set().union(*(by_folded[k] for k in oracle.within_one(q) if adds_only_letters(q, k)))
        assert set(propose(lex, q).forms) == want, q
        checked += 1


def _pset(surface, forms):
    return ProposalSet(surface, None, tuple(Proposal(f, SUBSTITUTION, frozenset({"N"})) for f in forms))


def test_h1_examples(example_lexicon):
    pset = propose(example_lexicon, "bos")
    assert set(apply_h1(pset).forms) == {"boss", "boys", "bop"}
    upper = propose(example_lexicon, "Bos")
    assert apply_h1(upper) == upper
    only_upper = _pset("bos", ["Bose", "Boss"])
    assert apply_h1(only_upper) == only_upper


form_st = st.text(alphabet="abAB", min_size=1, max_size=3)


@settings(max_examples=500)
@given(st.text(alphabet="abAB", min_size=1, max_size=4), st.lists(form_st, unique=True, max_size=6))
def test_h1_idempotent_and_never_empties(surface, forms):
    pset = _pset(surface, forms)
    once = apply_h1(pset)
    assert apply_h1(once) == once
    assert set(once.forms) <= set(pset.forms)
    assert bool(once.proposals) == bool(pset.proposals)


def test_h2():
    assert h2_excluded("teh")
    assert h2_excluded("bos")
    assert not h2_excluded("boss")
    assert h2_excluded("it's")  # three letters
    assert not h2_excluded("isn't")


def test_proposal_set_dump(example_lexicon):
    assert propose(example_lexicon, "bos").dump() == "bos\tBose,bop,boss,boys"
