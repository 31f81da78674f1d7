import os

import numpy as np
import pytest

from lpdecode.codes import BinaryMatrix, builtin_matrix

P0 = np.array([0, 2, 2, 2, 0, 0, 0, 0]) / 3.0
C1 = np.array([0, 0, 0, 0, 1, 1, 1, 1], dtype=float)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("LPDECODE_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="stretch target; set LPDECODE_STRETCH=1 to run")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def H1():
    return builtin_matrix("H1")


@pytest.fixture(scope="session")
def H2():
    return builtin_matrix("H2")


@pytest.fixture(scope="session")
def H3():
    return builtin_matrix("H3")


@pytest.fixture(scope="session")
def single_check():
    return BinaryMatrix.from_rows(["111"], name="single")


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
