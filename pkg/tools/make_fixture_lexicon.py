"""Regenerate tests/data/lexicon.tsv.

Dev-only: needs ``wordfreq``, ``lemminflect`` and ``textblob``, none of which
the package imports. Frequencies are per-million counts from wordfreq (roughly
the scale of a one-million-word background corpus). POS classes: the hand
table below for closed-class words; otherwise the most likely tag from the
Brill lexicon bundled with textblob, widened with lemminflect's noun/verb
readings for forms lemminflect treats as both (``play``, ``runs``).

    python tools/make_fixture_lexicon.py > tests/data/lexicon.tsv
"""
import re
import sys
from pathlib import Path

import importlib.util

import lemminflect
import wordfreq

TOP_N = 40000

CLOSED = {
    "DET": "a an the this that these those every each some any no all both either neither "
           "my your his her its our their another such much many few several whose what which",
    "PRON": "i me you he him she her it we us they them myself yourself himself herself itself "
            "ourselves themselves who whom what which that this these those one everyone everybody "
            "someone somebody anyone anybody nobody none nothing something anything everything "
            "mine yours hers ours theirs it's i'm you're he's she's we're they're i've "
            "you've we've they've i'll you'll he'll she'll we'll they'll i'd you'd he'd she'd we'd they'd",
    "PREP": "of in to for with on at by from up about into over after beneath under above below "
            "across along among around before behind between beyond during except inside near "
            "off onto out outside past since through throughout toward towards until upon within "
            "without against like than via per down",
    "CONJ": "and or but nor so yet if because although though while whereas unless whether "
            "when since that as once than",
    "ADV": "not very too also just only still even never always often again now then here there "
           "soon later early well already almost quite rather however finally slowly carefully",
    "NUM": "one two three four five six seven eight nine ten eleven twelve twenty thirty forty "
           "fifty hundred thousand million billion",
    "INTERJ": "oh ah yes hey hello wow ok okay",
}

PROPER = ("Bose Friday Monday Tuesday Wednesday Thursday Saturday Sunday December January "
          "London Paris John Mary Smith English America American Europe Christmas").split()

# misspellings used in worked examples; they must stay unknown
NON_WORDS = {"bos"}
VOWEL = re.compile(r"[aeiouy]")

# forms the corpus or the worked examples need that fall outside the frequency list
EXTRA = {"bop": ("N", "V"), "gallery": ("N",), "website": ("N",)}

PENN = {"NN": "N", "NNS": "N", "NNP": "PROPER", "NNPS": "PROPER", "MD": "V",
        "VB": "V", "VBD": "V", "VBG": "V", "VBN": "V", "VBP": "V", "VBZ": "V",
        "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ", "RB": "ADV", "RBR": "ADV", "RBS": "ADV",
        "RP": "ADV", "WRB": "ADV", "DT": "DET", "PDT": "DET", "WDT": "DET", "PRP$": "DET",
        "WP$": "DET", "PRP": "PRON", "WP": "PRON", "EX": "PRON", "IN": "PREP", "TO": "PREP",
        "CC": "CONJ", "CD": "NUM", "UH": "INTERJ"}


def brill_lexicon():
    # read the data file directly; importing textblob would pull in nltk
    spec = importlib.util.find_spec("textblob")
    path = Path(spec.origin).parent / "en" / "en-lexicon.txt"
    table = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith(";;;") or " " not in line:
            continue
        word, tag = line.split(" ", 1)
        if tag in PENN:
            table.setdefault(word, PENN[tag])
    return table


BRILL = brill_lexicon()

UPOS = {"NOUN": "N", "VERB": "V", "AUX": "V", "ADJ": "ADJ", "ADV": "ADV", "PROPN": "PROPER"}
WORD = re.compile(r"[a-z]+(?:['-][a-z]+)*")


def tags_for(word):
    tags = set()
    for pos, words in CLOSED.items():
        if word in words.split():
            tags.add(pos)
    if tags & {"DET", "PRON", "PREP", "CONJ"}:
        return tags
    lemmas = {UPOS[u] for u in lemminflect.getAllLemmas(word) if u in UPOS}
    primary = BRILL.get(word)
    if primary is None:
        return tags | lemmas
    tags.add(primary)
    if primary in ("N", "V") and {"N", "V"} <= lemmas:
        tags |= {"N", "V"}
    return tags


def bf(word):
    return int(round(wordfreq.word_frequency(word, "en") * 1_000_000))


def main():
    corpus_words = set()
    for path in sorted(Path(__file__).resolve().parents[1].glob("tests/data/corpus/*.txt")):
        corpus_words.update(w.lower() for w in WORD.findall(path.read_text().lower()))
    vocab = [w for w in wordfreq.top_n_list("en", TOP_N) if WORD.fullmatch(w)]
    vocab_set = set(vocab)
    rows = []
    seen = set()
    for word in sorted(set(vocab) | corpus_words | set(EXTRA)):
        tags = set(EXTRA.get(word, ())) or tags_for(word)
        form = "I" if word == "i" else word
        if not tags:
            # untagged frequent words are overwhelmingly names and brands
            if (len(word) < 2 or "'" in word or word not in vocab_set
                    or word in NON_WORDS or not VOWEL.search(word)):
                continue
            tags, form = {"PROPER"}, word.capitalize()
        # split the form's frequency across its tags so per-form totals stay exact
        total, ordered = bf(word), sorted(tags)
        share, extra = divmod(total, len(ordered))
        for i, tag in enumerate(ordered):
            rows.append((form, tag, share + (extra if i == 0 else 0)))
        seen.add(word)
    for name in PROPER:
        if name.lower() not in seen:
            rows.append((name, "PROPER", bf(name.lower())))
    missing = sorted(corpus_words - seen - {n.lower() for n in PROPER})
    if missing:
        print("untagged corpus words:", " ".join(missing), file=sys.stderr)
    out = sys.stdout
    out.write("# fixture lexicon: form TAB pos TAB bf (per-million counts)\n")
    for form, tag, count in rows:
        out.write(f"{form}\t{tag}\t{count}\n")


if __name__ == "__main__":
    main()
