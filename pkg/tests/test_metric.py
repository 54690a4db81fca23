import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_tree, trees, tree_apsp
from hopspan.metric import (
    Metric,
    SpannerGraph,
    ValidationError,
    WeightedTree,
    metric_distance,
    mst_edges,
    mst_weight,
    path_tree,
    uniform_line,
)


def test_uniform_line_coordinates():
    assert uniform_line(1).points.ravel().tolist() == [0.0]
    assert uniform_line(2).points.ravel().tolist() == [0.0, 0.5]
    assert uniform_line(4).points.ravel().tolist() == [0.0, 0.25, 0.5, 0.75]
    with pytest.raises(ValueError):
        uniform_line(0)


def test_distance_examples():
    assert metric_distance(uniform_line(4), 0, 3) == 0.75
    t = WeightedTree(3, [(0, 1, 2.0), (1, 2, 3.0)])
    assert metric_distance(Metric.from_tree(t), 0, 2) == 5.0
    for m in (uniform_line(5), Metric.from_tree(t)):
        assert metric_distance(m, 1, 1) == 0.0


def test_distance_index_errors():
    with pytest.raises(IndexError):
        metric_distance(uniform_line(3), 0, 3)
    with pytest.raises(IndexError):
        metric_distance(Metric.from_tree(path_tree(3)), -1, 0)


def test_mst_examples():
    for n in (1, 2, 7, 50):
        assert math.isclose(mst_weight(uniform_line(n)), (n - 1) / n, rel_tol=1e-12, abs_tol=1e-15)
    t = random_tree(40, np.random.default_rng(3))
    assert mst_weight(Metric.from_tree(t)) == t.weight
    m = Metric.from_matrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert mst_weight(m) == 2.0


@settings(max_examples=60, deadline=None)
@given(trees(min_n=1, max_n=120))
def test_tree_distance_matches_floyd_warshall(t):
    ref = tree_apsp(t)
    us, vs = np.meshgrid(np.arange(t.n), np.arange(t.n), indexing="ij")
    got = t.distance(us.ravel(), vs.ravel()).reshape(t.n, t.n)
    assert np.allclose(got, ref, rtol=1e-12, atol=0)
    assert np.allclose(t.distances_from(0), ref[0], rtol=1e-12, atol=0)


def test_tree_distance_n200():
    t = random_tree(200, np.random.default_rng(7))
    ref = tree_apsp(t)
    us, vs = np.triu_indices(200, 1)
    assert np.allclose(t.distance(us, vs), ref[us, vs], rtol=1e-12, atol=0)


def _spanning_trees(n, weights):
    """Weights of every spanning tree of K_n, by enumeration."""
    pairs = list(itertools.combinations(range(n), 2))
    for subset in itertools.combinations(range(len(pairs)), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for e in subset:
            a, b = find(pairs[e][0]), find(pairs[e][1])
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            yield sum(weights[pairs[e]] for e in subset)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_mst_is_minimum_over_all_spanning_trees(n, d, seed):
    pts = np.random.default_rng(seed).random((n, d))
    m = Metric.from_points(pts)
    w = {(u, v): m.distance(u, v) for u in range(n) for v in range(u + 1, n)}
    best = min(_spanning_trees(n, w))
    assert math.isclose(mst_weight(m), best, rel_tol=1e-9)


def test_mst_exhaustive_n8():
    m = Metric.from_points(np.random.default_rng(8).random((8, 2)))
    w = {(u, v): m.distance(u, v) for u in range(8) for v in range(u + 1, 8)}
    assert math.isclose(mst_weight(m), min(_spanning_trees(8, w)), rel_tol=1e-9)


@settings(max_examples=40, deadline=None)
@given(trees(min_n=1, max_n=80))
def test_mst_of_tree_metric_is_tree_weight(t):
    m = Metric.from_tree(t)
    assert mst_weight(m) == t.weight
    dense = Metric.from_matrix(tree_apsp(t))
    assert math.isclose(math.fsum(w for *_, w in mst_edges(dense)), t.weight, rel_tol=1e-9, abs_tol=1e-12)


def test_tree_validation():
    with pytest.raises(ValidationError, match="not spanning"):
        WeightedTree(3, [(0, 1, 1.0)])
    with pytest.raises(ValidationError, match="not spanning"):
        WeightedTree(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0)])
    with pytest.raises(ValidationError):
        WeightedTree(2, [(0, 1, -1.0)])
    with pytest.raises(ValidationError):
        WeightedTree(2, [(0, 1, math.inf)])
    with pytest.raises(ValidationError):
        WeightedTree(2, [(0, 2, 1.0)])


def test_matrix_validation():
    with pytest.raises(ValidationError, match="not symmetric"):
        Metric.from_matrix([[0, 1], [1 + 1e-3, 0]])
    with pytest.raises(ValidationError, match="diagonal"):
        Metric.from_matrix([[1, 1], [1, 0]])
    with pytest.raises(ValidationError, match="triangle"):
        Metric.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]], check_triangle=True)
    Metric.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])  # triangle check is opt-in


def test_point_set_shape():
    assert Metric.from_points([[0, 0], [1, 1]]).points.shape == (2, 2)
    with pytest.raises(ValidationError):
        Metric.from_points(np.zeros((0, 2)))


def test_spanner_graph_invariants():
    with pytest.raises(ValidationError, match="self-loop"):
        SpannerGraph(2, 2, [(1, 1, 0.0)])
    with pytest.raises(ValidationError, match="duplicate"):
        SpannerGraph(2, 2, [(0, 1, 1.0), (1, 0, 1.0)])
    with pytest.raises(ValidationError):
        SpannerGraph(3, 2, [])
    g = SpannerGraph(2, 3, [(0, 2, 1.0), (1, 2, 1.0), (0, 1, 0.25)])
    assert g.weight == 2.25 and g.real_weight == 0.25
    with pytest.raises(ValidationError, match="below metric"):
        g.check_against(uniform_line(2))
    SpannerGraph(2, 2, [(0, 1, 0.5)]).check_against(uniform_line(2))
