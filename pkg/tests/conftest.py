import pytest

from pmingames.graph import WeightedGraph

ACCEPTANCE_LINES: list[str] = []


def graph1(n: int, edges: dict) -> WeightedGraph:
    """Build a graph from 1-based ``{(u, v): w}``."""
    return WeightedGraph(n, {(u - 1, v - 1): w for (u, v), w in edges.items()})


# Named instances used across the suite, 1-based as drawn.
TRIANGLE_123 = graph1(3, {(1, 2): 1, (2, 3): 2, (1, 3): 3})
THREE_WEIGHT_STAR = graph1(6, {(1, 2): 1, (2, 3): 2, (2, 4): 2, (4, 5): 3, (2, 6): 2})
LIGHT_STAR_GRAPH = graph1(7, {
    (1, 2): 1, (1, 3): 1, (1, 5): 1, (1, 6): 1, (1, 7): 1,
    (2, 6): 2, (3, 4): 2, (3, 6): 2, (3, 7): 2, (4, 5): 2, (4, 6): 2, (4, 7): 2, (6, 7): 2,
})
UNIQUE_MIN_GRAPH = graph1(10, {
    (1, 2): 1, (1, 6): 2,
    (3, 4): 2, (3, 5): 2, (3, 6): 2, (4, 5): 2, (4, 6): 2, (5, 6): 2,
    (7, 8): 2, (7, 9): 2, (8, 10): 2, (9, 10): 2,
    (2, 7): 2, (2, 8): 2, (2, 9): 2, (2, 10): 2,
})
BOOK = graph1(4, {(1, 2): 1, (1, 3): 2, (2, 3): 2, (1, 4): 2, (2, 4): 2})
PATH_132 = graph1(4, {(1, 2): 1, (2, 3): 3, (3, 4): 2})
PATH_FOUR_WEIGHTS = graph1(5, {(1, 2): 1, (2, 3): 2, (3, 4): 3, (4, 5): 4})
PATH_12 = graph1(3, {(1, 2): 1, (2, 3): 2})
STAR_123 = graph1(4, {(1, 2): 1, (1, 3): 2, (1, 4): 3})


@pytest.fixture
def write_graph(tmp_path):
    from pmingames.graph import format_graph

    def _write(g: WeightedGraph, name: str = "g.txt"):
        path = tmp_path / name
        path.write_text(format_graph(g), encoding="utf-8")
        return str(path)

    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
