"""Tree covers: identity cover, shifted-quadtree HST cover, and cover statistics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .metric import REL_TOL, Metric, ValidationError, WeightedTree, mst_weight

FULL_PAIRS_LIMIT = 512
SAMPLE_PAIRS = 100_000
SAMPLE_SEED = 0


class DominationError(ValidationError):
    """A cover tree shortens some metric distance."""

    def __init__(self, tree_index: int, u: int, v: int, tree_dist: float, metric_dist: float):
        self.tree_index = tree_index
        self.pair = (u, v)
        super().__init__(
            f"tree {tree_index} is not dominating: pair ({u}, {v}) has tree distance "
            f"{tree_dist!r} < metric distance {metric_dist!r}"
        )


@dataclass
class TreeCover:
    """A collection of dominating trees over the same real points.

    ``point_maps[j][p]`` is the vertex of ``trees[j]`` that represents real
    point ``p``; unmapped tree vertices are auxiliary.
    """

    trees: list[WeightedTree]
    point_maps: list[np.ndarray]
    declared_stretch: float = 1.0
    declared_lightness: float = 1.0

    def __post_init__(self):
        if not self.trees:
            raise ValidationError("empty cover")
        if len(self.point_maps) != len(self.trees):
            raise ValidationError("one point map per tree is required")
        self.point_maps = [np.asarray(pm, dtype=np.int64) for pm in self.point_maps]
        n = len(self.point_maps[0])
        for j, (t, pm) in enumerate(zip(self.trees, self.point_maps)):
            if len(pm) != n:
                raise ValidationError(f"tree {j}: point map covers {len(pm)} points, expected {n}")
            if pm.size and (pm.min() < 0 or pm.max() >= t.n):
                raise ValidationError(f"tree {j}: point map references a vertex outside the tree")
            if len(np.unique(pm)) != n:
                raise ValidationError(f"tree {j}: two points share a tree vertex")

    @property
    def size(self) -> int:
        return len(self.trees)

    @property
    def real_count(self) -> int:
        return len(self.point_maps[0])


class CoverStats(NamedTuple):
    size: int
    measured_stretch: float
    measured_lightness: float


def identity_cover(t: WeightedTree) -> TreeCover:
    return TreeCover([t], [np.arange(t.n)], 1.0, 1.0)


def sample_pairs(n: int, limit: int = FULL_PAIRS_LIMIT, count: int = SAMPLE_PAIRS, seed: int = SAMPLE_SEED):
    """All pairs ``u < v`` when ``n <= limit``, otherwise ``count`` seeded random pairs."""
    if n <= limit:
        us, vs = np.triu_indices(n, k=1)
        return us.astype(np.int64), vs.astype(np.int64)
    rng = np.random.default_rng(seed)
    us = rng.integers(0, n, size=count)
    vs = rng.integers(0, n - 1, size=count)
    vs = vs + (vs >= us)
    return np.minimum(us, vs), np.maximum(us, vs)


def _ratios(tree_d: np.ndarray, metric_d: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        r = tree_d / metric_d
    zero = metric_d == 0
    r[zero] = np.where(tree_d[zero] == 0, 1.0, np.inf)
    return r


def cover_stats(c: TreeCover, m: Metric) -> CoverStats:
    """Size, measured stretch and measured lightness of ``c`` on ``m``.

    Raises :class:`DominationError` (with a witness pair) if any tree
    shortens a metric distance.
    """
    if c.real_count != m.size:
        raise ValidationError(f"cover maps {c.real_count} points but the metric has {m.size}")
    us, vs = sample_pairs(m.size)
    md = m.pair_distances(us, vs)
    best = np.full(len(us), np.inf)
    for j, (t, pm) in enumerate(zip(c.trees, c.point_maps)):
        td = np.asarray(t.distance(pm[us], pm[vs]), dtype=np.float64)
        bad = np.flatnonzero(td < md - REL_TOL * np.maximum(md, 1e-300))
        if bad.size:
            i = bad[0]
            raise DominationError(j, int(us[i]), int(vs[i]), float(td[i]), float(md[i]))
        best = np.minimum(best, _ratios(td, md))
    stretch = float(best.max()) if best.size else 1.0
    base = mst_weight(m)
    if base > 0:
        light = max(t.weight for t in c.trees) / base
    else:
        light = 1.0 if all(t.weight == 0 for t in c.trees) else math.inf
    return CoverStats(c.size, stretch, light)


def check_domination(c: TreeCover, m: Metric) -> None:
    cover_stats(c, m)


def shifted_quadtree_cover(points: Metric, base_cells: int = 1) -> TreeCover:
    """Cover a Euclidean point set by ``d + 1`` shifted quadtree HSTs.

    Points are rescaled into ``[0, 1)^d``; hierarchy ``j`` shifts them by
    ``j / (d + 2)`` in every coordinate and partitions the root cell
    ``[0, 2)^d`` into ``base_cells`` parts per axis, then halves each axis
    per level. Each nonempty cell holding two or more points becomes an
    auxiliary vertex; a cell holding one point is that point's leaf. The
    edge from a cell to a child hangs at half the parent cell's diameter,
    so every leaf-to-leaf distance is at least the diameter of the lowest
    common cell. Cells with a single nonempty child are spliced out (their
    edge weights add up), which leaves all leaf distances unchanged.

    Stretch and lightness are not guaranteed: the declared values of the
    returned cover are the ones measured by :func:`cover_stats`.
    """
    if points.kind != "points":
        raise ValidationError("shifted_quadtree_cover needs a Euclidean point set")
    if base_cells < 1:
        raise ValueError("base_cells must be >= 1")
    pts = points.points
    n, d = pts.shape
    if n > 1:
        uniq = np.unique(pts, axis=0)
        if len(uniq) != n:
            raise ValidationError("point set contains exact duplicates")
    lo = pts.min(axis=0)
    extent = float((pts.max(axis=0) - lo).max())
    scale = extent * (1.0 + 1e-9) if extent > 0 else 1.0
    unit = (pts - lo) / scale  # in [0, 1)^d
    depth_cap = max(1, math.ceil(2 * math.log2(n))) if n > 1 else 1
    trees, maps = [], []
    for j in range(d + 1):
        shifted = unit + j / (d + 2)
        t = _quadtree_hst(shifted, base_cells, depth_cap, scale)
        trees.append(t)
        maps.append(np.arange(n))
    cover = TreeCover(trees, maps)
    stats = cover_stats(cover, points)
    cover.declared_stretch = stats.measured_stretch
    cover.declared_lightness = stats.measured_lightness
    return cover


def _quadtree_hst(pts: np.ndarray, base_cells: int, depth_cap: int, scale: float) -> WeightedTree:
    n, d = pts.shape
    if n == 1:
        return WeightedTree(1, [])
    rootd = math.sqrt(d)
    edges: list[tuple[int, int, float]] = []
    next_aux = n
    # (origin, side, member indices, depth, attach vertex or -1, pending weight)
    stack = [(np.zeros(d), 2.0, np.arange(n), 0, -1, 0.0)]
    while stack:
        origin, side, members, depth, attach, pending = stack.pop()
        if len(members) == 1:
            edges.append((attach, int(members[0]), pending * scale))
            continue
        half_diam = side * rootd / 2
        if depth >= depth_cap:
            node = next_aux
            next_aux += 1
            if attach >= 0:
                edges.append((attach, node, pending * scale))
            for p in members:
                edges.append((node, int(p), half_diam * scale))
            continue
        split = base_cells if depth == 0 else 2
        child_side = side / split
        cell = np.floor((pts[members] - origin) / child_side).astype(np.int64)
        cell = np.clip(cell, 0, split - 1)
        key = np.zeros(len(members), dtype=np.int64)
        for axis in range(d):
            key = key * split + cell[:, axis]
        keys, inverse = np.unique(key, return_inverse=True)
        if len(keys) == 1:
            stack.append((origin + cell[0] * child_side, child_side, members, depth + 1,
                          attach, pending + half_diam))
            continue
        node = next_aux
        next_aux += 1
        if attach >= 0:
            edges.append((attach, node, pending * scale))
        children = []
        for ci in range(len(keys)):
            sub = members[inverse.ravel() == ci]
            corner = origin + cell[np.flatnonzero(inverse.ravel() == ci)[0]] * child_side
            children.append((corner, child_side, sub, depth + 1, node, half_diam))
        stack.extend(reversed(children))  # pop in increasing cell index order
    root = n
    return WeightedTree(next_aux, edges, root=root)
