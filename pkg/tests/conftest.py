from pathlib import Path

import pytest

from reqconflict.dictionary import parse_dictionary

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def dictionary():
    return parse_dictionary((FIXTURES / "dictionary.csv").read_text())


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    ok = rep.passed if rep.when == "call" else not rep.failed
    prev = _criteria.get(number, (title, True))[1]
    _criteria[number] = (title, prev and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
