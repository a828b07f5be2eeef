from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

import report
from semdb.catalog import builtin_catalog
from semdb.plex import parse_lexicon_source
from semdb.validate import PatternIndex, shipped_aliases

TESTS = Path(__file__).parent
DATA = resources.files("semdb.data")


def read_data(name: str) -> str:
    return DATA.joinpath(name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def demo_source() -> str:
    return read_data("demo.plex")


@pytest.fixture(scope="session")
def demo_lexicon(demo_source):
    return parse_lexicon_source(demo_source)


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def index(demo_lexicon, catalog):
    return PatternIndex.build(demo_lexicon, catalog)


@pytest.fixture(scope="session")
def aliases():
    return shipped_aliases()


@pytest.fixture(scope="session")
def sample_text() -> str:
    return read_data("sample.vit")


@pytest.fixture(scope="session")
def two_quantifier_text() -> str:
    return (TESTS / "data" / "two_quantifiers.vit").read_text(encoding="utf-8")


def pytest_terminal_summary(terminalreporter):
    if not report.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, info in report.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({info})")
