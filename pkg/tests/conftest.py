from pathlib import Path

import pytest

from termmap.terms import load_corpus
from termmap.toc import load_toc

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_toc_path():
    return FIXTURES / "toc.tsv"


@pytest.fixture(scope="session")
def fixture_terms_dir():
    return FIXTURES / "terms"


@pytest.fixture()
def fixture_toc(fixture_toc_path):
    toc, diagnostics = load_toc(fixture_toc_path)
    assert diagnostics == []
    return toc


@pytest.fixture()
def fixture_corpus(fixture_toc, fixture_terms_dir):
    # Large staleness threshold keeps the fixture corpus warning-free
    # regardless of when the suite runs.
    terms, diagnostics = load_corpus(fixture_terms_dir, fixture_toc, staleness_days=10**6)
    assert diagnostics == []
    return fixture_toc, terms
