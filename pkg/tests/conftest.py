import pytest

from votinggames.rng import Rng

CRITERIA: dict[int, str] = {}


def record_criterion(number: int, passed: bool, text: str):
    CRITERIA[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])


@pytest.fixture
def rng():
    return Rng(20261016)
