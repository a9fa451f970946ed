import sys

import pytest

from vebo.graph import from_edge_list


@pytest.fixture
def two_cycle():
    return from_edge_list([(0, 1), (1, 0)], 2)


@pytest.fixture
def star():
    """Four leaves pointing at vertex 1."""
    return from_edge_list([(0, 1), (2, 1), (3, 1), (4, 1)], 5)


@pytest.fixture
def path3():
    return from_edge_list([(0, 1), (1, 2)], 3)


# In-degrees (5, 4, 2, 1, 1, 1): 14 edges over 6 vertices.
SIX_VERTEX_EDGES = [
    (1, 0), (2, 0), (3, 0), (4, 0), (5, 0),
    (2, 1), (3, 1), (4, 1), (5, 1),
    (3, 2), (4, 2),
    (5, 3),
    (0, 4),
    (0, 5),
]


@pytest.fixture
def six_vertex():
    return from_edge_list(SIX_VERTEX_EDGES, 6)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
