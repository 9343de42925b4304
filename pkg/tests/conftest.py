from pathlib import Path

import pytest

from vibesift import pattern, valence

DATA = Path(__file__).parent / "data"


@pytest.fixture
def table_path():
    return DATA / "table_5.csv"


@pytest.fixture(scope="session")
def vlex():
    return valence.default_valence_lexicon()


@pytest.fixture(scope="session")
def plex():
    return pattern.default_pattern_lexicon()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, title = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
