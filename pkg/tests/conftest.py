import random

import pytest

from locrecon.graph import SparseGraph


def random_graph(n, edges, seed, m_bound=None, directed=False):
    """Uniform random simple (di)graph with exactly ``edges`` edges."""
    rng = random.Random(seed)
    es = set()
    while len(es) < edges:
        u, v = rng.sample(range(1, n + 1), 2)
        es.add((u, v) if directed else (min(u, v), max(u, v)))
    return SparseGraph.from_edges(n, es, m_bound or max(n, edges), directed=directed)


def components_graph(sizes, m_bound, seed=0):
    """Disjoint random trees of the given sizes, labels shuffled."""
    rng = random.Random(seed)
    n = sum(sizes)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    edges = []
    at = 0
    for s in sizes:
        block = labels[at:at + s]
        for i in range(1, s):
            edges.append((block[i], block[rng.randrange(i)]))
        at += s
    return SparseGraph.from_edges(n, edges, m_bound)


@pytest.fixture
def two_triangles():
    return SparseGraph.from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)], 12)


# one line per acceptance criterion, echoed in the terminal summary
CRITERIA: dict[int, str] = {}


def record_criterion(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    CRITERIA[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[num])
