import numpy as np
import pytest

from conftest import random_tree
from hopspan import io
from hopspan.cover import identity_cover, shifted_quadtree_cover
from hopspan.metric import Metric, SpannerGraph, uniform_line
from hopspan.spanner import build_tree_spanner


def _norm(text):
    return "".join(text.split())


def test_tree_round_trip(tmp_path):
    t = random_tree(30, np.random.default_rng(1))
    f = tmp_path / "t.json"
    io.save_tree(t, f)
    back = io.load_tree(f)
    assert back == t
    g = tmp_path / "t2.json"
    io.save_tree(back, g)
    assert f.read_text() == g.read_text()


def test_canonical_file_byte_identical_modulo_whitespace(tmp_path):
    f = tmp_path / "t.json"
    f.write_text('{"n": 3, "root": 0, "edges": [[0, 1, 0.10000000000000001], [1, 2, 2]]}')
    g = tmp_path / "out.json"
    io.save_tree(io.load_tree(f), g)
    assert _norm(g.read_text()) == _norm(f.read_text())


def test_floats_have_17_significant_digits():
    assert io.fmt(0.1) == "0.10000000000000001"
    assert float(io.fmt(1 / 3)) == 1 / 3


def test_spanner_round_trip(tmp_path):
    g = build_tree_spanner(random_tree(25, np.random.default_rng(2)), 3)
    f = tmp_path / "s.json"
    io.save_spanner(g, f)
    back = io.load_spanner(f)
    assert back.edges == g.edges
    assert (back.real_count, back.total_count, back.declared_k, back.declared_t) == (25, 25, 3, 1.0)
    h = tmp_path / "s2.json"
    io.save_spanner(back, h)
    assert h.read_text() == f.read_text()


def test_points_and_matrix_round_trip(tmp_path):
    m = Metric.from_points(np.random.default_rng(3).random((10, 3)))
    f = tmp_path / "p.csv"
    io.save_points(m, f)
    assert np.array_equal(io.load_points(f).points, m.points)
    mat = Metric.from_matrix(np.abs(np.subtract.outer(np.arange(5.0), np.arange(5.0))) / 7)
    g = tmp_path / "m.csv"
    io.save_matrix(mat, g)
    assert np.array_equal(io.load_matrix(g).matrix, mat.matrix)
    assert io.load_metric(g).kind == "matrix"
    assert io.load_metric(f).kind == "points"


def test_cover_round_trip(tmp_path):
    m = Metric.from_points(np.random.default_rng(4).random((20, 2)))
    c = shifted_quadtree_cover(m)
    f = tmp_path / "c.json"
    io.save_cover(c, f)
    back = io.load_cover(f)
    assert back.size == c.size
    assert all(a == b for a, b in zip(back.trees, c.trees))
    assert all(np.array_equal(a, b) for a, b in zip(back.point_maps, c.point_maps))
    assert back.declared_stretch == c.declared_stretch
    h = tmp_path / "c2.json"
    io.save_cover(back, h)
    assert h.read_text() == f.read_text()


def test_tree_not_spanning(tmp_path):
    f = tmp_path / "t.json"
    f.write_text('{"n": 3, "root": 0, "edges": [[0, 1, 1.0]]}')
    with pytest.raises(io.FormatError, match="not spanning"):
        io.load_tree(f)


def test_matrix_not_symmetric(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("0,1\n1.001,0\n")
    with pytest.raises(io.FormatError, match="not symmetric"):
        io.load_matrix(f)


def test_position_diagnostics(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"n": 2,\n "edges": [[0, 1, 1.0],]}')
    with pytest.raises(io.FormatError, match="line 2"):
        io.load_tree(f)
    f.write_text('{"n": 3, "edges": [[0, 1, 1.0], [1, "x", 2.0]]}')
    with pytest.raises(io.FormatError, match=r"edges\[1\]"):
        io.load_tree(f)
    g = tmp_path / "p.csv"
    g.write_text("0,0\n1,1\n2\n")
    with pytest.raises(io.FormatError, match="line 3"):
        io.load_points(g)
    g.write_text("0,0\n1,abc\n")
    with pytest.raises(io.FormatError, match="line 2"):
        io.load_points(g)


def test_spanner_file_rejects_duplicates(tmp_path):
    f = tmp_path / "s.json"
    f.write_text('{"real": 2, "total": 2, "k": 1, "t": 1, "edges": [[0, 1, 1], [1, 0, 1]]}')
    with pytest.raises(io.FormatError, match="duplicate"):
        io.load_spanner(f)


def test_cover_file_errors(tmp_path):
    f = tmp_path / "c.json"
    f.write_text('{"gamma": 2, "t": 1, "L": 1, "trees": [{"n": 1, "root": 0, "edges": [], "point_map": [[0, 0]]}]}')
    with pytest.raises(io.FormatError, match="gamma"):
        io.load_cover(f)
    f.write_text('{"gamma": 1, "t": 1, "L": 1, "trees": [{"n": 1, "root": 0, "edges": [], "point_map": [[0, 3]]}]}')
    with pytest.raises(io.FormatError, match="outside the tree"):
        io.load_cover(f)


def test_identity_cover_file(tmp_path):
    t = random_tree(6, np.random.default_rng(5))
    f = tmp_path / "c.json"
    io.save_cover(identity_cover(t), f)
    c = io.load_cover(f)
    assert c.trees[0] == t and c.declared_stretch == 1.0 and c.declared_lightness == 1.0
