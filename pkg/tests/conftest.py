from pathlib import Path

import pytest

from almostnormal.tetra import FACES
from almostnormal.triangulation import build_triangulation, load_triangulation

FIXTURES = Path(__file__).parent / "fixtures"

# Two tetrahedra glued face to face by the identity: the 3-sphere.
DOUBLE_TABLE = [[(1, f, FACES[f]) for f in range(4)], [(0, f, FACES[f]) for f in range(4)]]

# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES = []


@pytest.fixture
def double():
    return build_triangulation(DOUBLE_TABLE)


@pytest.fixture
def closed_fixture():
    return load_triangulation(FIXTURES / "fixture_closed.tri")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
