"""Benchmark sweeps over instance families and scaling-exponent fits."""
from __future__ import annotations

import csv
import math
import re
import time
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from .cover import shifted_quadtree_cover
from .io import fmt
from .metric import Metric, WeightedTree, path_tree, uniform_line
from .spanner import build_tree_spanner, cover_to_spanner
from .verify import verify

CSV_HEADER = [
    "family", "n", "k", "edge_count", "weight", "mst_weight",
    "lightness", "max_stretch", "hop_diameter", "build_millis",
]
_POINTS_FAMILY = re.compile(r"random-points-(\d+)[dD]$")


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    k: int
    edge_count: int
    weight: float
    mst_weight: float
    lightness: float
    max_stretch: float
    hop_diameter: int
    build_millis: float


def random_tree(n: int, rng: np.random.Generator, low: float = 1.0, high: float = 100.0) -> WeightedTree:
    """Uniform random attachment tree: vertex i hangs off a uniform earlier vertex."""
    if n == 1:
        return WeightedTree(1, [])
    parents = [int(rng.integers(0, i)) for i in range(1, n)]
    weights = rng.uniform(low, high, size=n - 1)
    return WeightedTree(n, [(i, p, float(w)) for i, (p, w) in enumerate(zip(parents, weights), start=1)])


def random_points(n: int, d: int, rng: np.random.Generator) -> Metric:
    return Metric.from_points(rng.random((n, d)))


def check_family(family: str) -> None:
    if family not in ("uniform-line", "random-tree") and not _POINTS_FAMILY.match(family):
        raise ValueError(f"unknown family {family!r}")


def _instance(family: str, n: int, seed: int):
    """(metric, build function of k) for one family member."""
    rng = np.random.default_rng([seed, n])
    if family == "uniform-line":
        t = path_tree(n, 1.0 / n)
        return uniform_line(n), lambda k: build_tree_spanner(t, k)
    if family == "random-tree":
        t = random_tree(n, rng)
        return Metric.from_tree(t), lambda k: build_tree_spanner(t, k)
    d = int(_POINTS_FAMILY.match(family).group(1))
    m = random_points(n, d, rng)
    cover = shifted_quadtree_cover(m)
    return m, lambda k: cover_to_spanner(cover, k, m, trust=True)


def bench_sweep(family: str, ns, ks, seed: int = 0, timing: bool = False) -> list[BenchRow]:
    """One row per (n, k), sorted by (family, n, k).

    ``build_millis`` is wall-clock only when ``timing`` is set; otherwise it
    is 0 so that equal seeds give byte-identical output.
    """
    check_family(family)
    if not ns or not ks:
        raise ValueError("need at least one n and one k")
    rows = []
    for n in sorted(set(ns)):
        m, build = _instance(family, n, seed)
        for k in sorted(set(ks)):
            start = time.perf_counter()
            g = build(k)
            millis = (time.perf_counter() - start) * 1000.0 if timing else 0.0
            rep = verify(g, m, k, g.declared_t)
            s = rep.stats
            rows.append(BenchRow(family, n, k, s.edge_count, s.weight, s.mst_weight,
                                 s.lightness, s.max_stretch, s.hop_diameter_at_t, millis))
    return rows


def write_csv(rows, path) -> None:
    lines = [",".join(CSV_HEADER)]
    for r in rows:
        cells = []
        for value in astuple(r):
            if isinstance(value, float):
                cells.append("inf" if math.isinf(value) else fmt(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> list[BenchRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        out = []
        for row in reader:
            vals = []
            for f, cell in zip(fields(BenchRow), row):
                typ = {"str": str, "int": int, "float": float}[f.type]
                vals.append(typ(cell))
            out.append(BenchRow(*vals))
    return out


def fit_slope(rows, k: int | None = None) -> float:
    """Least-squares slope of ln(lightness) against ln(n)."""
    if k is not None:
        rows = [r for r in rows if r.k == k]
    if len({r.n for r in rows}) < 3:
        raise ValueError("fit_slope needs at least 3 distinct n values")
    x = np.log([r.n for r in rows])
    y = np.log([r.lightness for r in rows])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
