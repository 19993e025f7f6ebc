import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import helpers


def pytest_terminal_summary(terminalreporter):
    if helpers.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in helpers.VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return helpers.make_rng()
