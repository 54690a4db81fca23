import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_tree, trees
from hopspan.decompose import centroid, split
from hopspan.metric import WeightedTree, path_tree


def _bfs_components(t, removed):
    removed = set(removed)
    seen, comps = set(), []
    for s in range(t.n):
        if s in removed or s in seen:
            continue
        comp, frontier = {s}, [s]
        while frontier:
            v = frontier.pop()
            for u, _ in t.adj[v]:
                if u not in removed and u not in comp:
                    comp.add(u)
                    frontier.append(u)
        seen |= comp
        comps.append(comp)
    return comps


def check_separator(t, sep, ell):
    X = set(sep.separator)
    comps = [set(c) for c in sep.components]
    # partition
    union = set().union(X, *comps)
    assert union == set(range(t.n))
    assert sum(len(c) for c in comps) + len(X) == t.n
    # independent BFS reproduces the components
    assert sorted(map(sorted, _bfs_components(t, X))) == sorted(map(sorted, comps))
    assert len(X) <= math.ceil(2 * t.n / ell)
    for comp, bnd in zip(comps, sep.boundary):
        assert len(comp) <= ell
        leaving = [(u, v) for u, v, _ in t.edges if (u in comp) != (v in comp)]
        assert len(leaving) <= 2
        outside = {v if u in comp else u for u, v in leaving}
        assert outside <= X
        assert set(bnd) == outside
        assert len(bnd) == len(set(bnd))


def test_centroid_examples():
    assert centroid(WeightedTree(1, [])) == 0
    assert centroid(path_tree(3)) == 1
    star = WeightedTree(7, [(5, v, 1.0) for v in range(7) if v != 5])
    assert centroid(star) == 5


@settings(max_examples=200, deadline=None)
@given(trees(min_n=1, max_n=80))
def test_centroid_property(t):
    c = centroid(t)
    assert all(len(comp) <= t.n // 2 for comp in _bfs_components(t, [c]))
    for v in range(c):  # smallest index wins
        assert any(len(comp) > t.n // 2 for comp in _bfs_components(t, [v]))


def test_split_path7():
    t = path_tree(7)
    sep = split(t, 3)
    assert sep.separator == [3]
    assert sep.components == [[0, 1, 2], [4, 5, 6]]
    assert sep.boundary == [[3], [3]]
    # exhaustive over single-vertex separators: {3} is the only valid one
    valid = []
    for x in range(7):
        comps = _bfs_components(t, [x])
        if all(len(c) <= 3 for c in comps):
            valid.append(x)
    assert valid == [3]


def test_split_small_tree_no_cut():
    t = random_tree(5, np.random.default_rng(0))
    for ell in (5, 6, 100):
        sep = split(t, ell)
        assert sep.separator == [] and sep.components == [list(range(5))]


def test_split_complete_binary_tree():
    t = WeightedTree(15, [(v, (v - 1) // 2, 1.0) for v in range(1, 15)])
    sep = split(t, 3)
    check_separator(t, sep, 3)
    assert len(sep.separator) <= 10


@settings(max_examples=300, deadline=None)
@given(trees(min_n=1, max_n=300), st.sampled_from(["1", "2", "3", "sqrt", "half"]))
def test_split_invariants(t, which):
    ell = {"1": 1, "2": 2, "3": 3, "sqrt": math.isqrt(t.n), "half": t.n // 2}[which]
    ell = max(ell, 1)
    check_separator(t, split(t, ell), ell)


def test_split_deterministic():
    t = random_tree(500, np.random.default_rng(9))
    assert split(t, 7) == split(t, 7)


def test_split_rejects_bad_ell():
    with pytest.raises(ValueError):
        split(path_tree(3), 0)
