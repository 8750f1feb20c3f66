import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from chiral_miura.lalg import build_table  # noqa: E402
from chiral_miura.suites import CLASSICAL_TABLE, MAIN_TABLE  # noqa: E402

ACCEPTANCE_LINES: dict = {}


def record(criterion: int, ok: bool, note: str = "") -> None:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}"
    if note:
        line += f"  {note}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)


@pytest.fixture(scope="session")
def main_table():
    return build_table(MAIN_TABLE)


@pytest.fixture(scope="session")
def classical_table():
    return build_table(CLASSICAL_TABLE)


@pytest.fixture(scope="session")
def classical_bracket(classical_table):
    from chiral_miura.classical import classical_limit

    return classical_limit(classical_table)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
