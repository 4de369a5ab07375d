import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

ROOT = Path(__file__).resolve().parent.parent


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fixture_x():
    from signap.pattern import parse_pattern
    return parse_pattern((ROOT / "fixtures" / "worked_example_X.sp").read_text())


@pytest.fixture(scope="session")
def fixture_y():
    from signap.pattern import parse_pattern
    return parse_pattern((ROOT / "fixtures" / "worked_example_Y.sp").read_text())
