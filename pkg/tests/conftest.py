from pathlib import Path

import pytest

from ctxspell.corpus import ingest_corpus
from ctxspell.guessers import load_rules
from ctxspell.lexicon import load_lexicon

DATA = Path(__file__).parent / "data"
CORPUS_FILES = sorted((DATA / "corpus").glob("*.txt"))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(DATA / "lexicon.tsv")


@pytest.fixture(scope="session")
def example_lexicon():
    return load_lexicon(DATA / "example1.tsv")


@pytest.fixture(scope="session")
def rules():
    return load_rules(DATA / "rules.tsv")


@pytest.fixture(scope="session")
def corpus():
    return ingest_corpus(CORPUS_FILES)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
