import numpy as np
import pytest
from hypothesis import strategies as st

from hopspan.metric import WeightedTree


def random_tree(n, rng, low=1.0, high=100.0, root=0):
    """Random attachment tree with vertex labels shuffled."""
    perm = rng.permutation(n)
    edges = []
    for i in range(1, n):
        p = int(rng.integers(0, i))
        edges.append((int(perm[i]), int(perm[p]), float(rng.uniform(low, high))))
    return WeightedTree(n, edges, root=root)


def tree_apsp(t):
    """Floyd-Warshall on the tree's own edges; independent of the LCA code."""
    d = np.full((t.n, t.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in t.edges:
        d[u, v] = d[v, u] = w
    for k in range(t.n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


@st.composite
def trees(draw, min_n=1, max_n=60):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree(n, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
