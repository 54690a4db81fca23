"""Core data types: weighted trees, metrics, spanner graphs, and the MST baseline."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

REL_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when an input object violates a structural invariant."""


def _check_index(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range [0, {n})")


class WeightedTree:
    """Edge-weighted tree over vertices ``0..n-1``.

    Construction validates the tree (n-1 edges, connected, finite nonnegative
    weights) and precomputes root distances plus a binary-lifting table so
    that :meth:`distance` runs in O(log n).
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int, float]], root: int = 0):
        if n < 1:
            raise ValidationError("tree needs at least one vertex")
        edges = [(int(u), int(v), float(w)) for u, v, w in edges]
        if len(edges) != n - 1:
            raise ValidationError(f"not spanning: {n} vertices but {len(edges)} edges")
        _check_index(root, n)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i, (u, v, w) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {i}: vertex index out of range")
            if u == v:
                raise ValidationError(f"edge {i}: self-loop at {u}")
            if not math.isfinite(w) or w < 0:
                raise ValidationError(f"edge {i}: weight must be finite and >= 0, got {w}")
            adj[u].append((v, w))
            adj[v].append((u, w))
        for nbrs in adj:
            nbrs.sort()
        self.n = n
        self.root = root
        self.edges = edges
        self.adj = adj
        self._prepare()

    def _prepare(self) -> None:
        n = self.n
        parent = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        rdist = np.zeros(n, dtype=np.float64)
        order = [self.root]
        seen = [False] * n
        seen[self.root] = True
        for v in order:
            for u, w in self.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    rdist[u] = rdist[v] + w
                    order.append(u)
        if len(order) != n:
            raise ValidationError("not spanning: tree is disconnected")
        self.parent = parent
        self.depth = depth
        self.root_dist = rdist
        self.order = order  # BFS order from the root
        levels = max(1, int(depth.max()).bit_length())
        up = np.empty((levels, n), dtype=np.int64)
        up[0] = np.where(parent < 0, np.arange(n), parent)
        for j in range(1, levels):
            up[j] = up[j - 1][up[j - 1]]
        self._up = up

    @property
    def weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def lca(self, u, v):
        """Lowest common ancestor; accepts scalars or equal-shape integer arrays."""
        scalar = np.isscalar(u) and np.isscalar(v)
        u, v = np.broadcast_arrays(
            np.atleast_1d(np.asarray(u, dtype=np.int64)),
            np.atleast_1d(np.asarray(v, dtype=np.int64)),
        )
        u, v = u.copy(), v.copy()
        if u.size and (u.min() < 0 or v.min() < 0 or u.max() >= self.n or v.max() >= self.n):
            raise IndexError("vertex index out of range")
        swap = self.depth[u] < self.depth[v]
        u[swap], v[swap] = v[swap], u[swap]
        diff = self.depth[u] - self.depth[v]
        for j in range(self._up.shape[0]):
            bit = ((diff >> j) & 1).astype(bool)
            u[bit] = self._up[j][u[bit]]
        for j in range(self._up.shape[0] - 1, -1, -1):
            au, av = self._up[j][u], self._up[j][v]
            move = au != av
            u[move], v[move] = au[move], av[move]
        res = np.where(u == v, u, self._up[0][u])
        return int(res[0]) if scalar else res

    def distance(self, u, v):
        """Tree distance via root distances and the LCA."""
        a = self.lca(u, v)
        d = self.root_dist[u] + self.root_dist[v] - 2.0 * self.root_dist[a]
        d = np.maximum(d, 0.0)
        return float(d) if np.ndim(d) == 0 else d

    def distances_from(self, source: int) -> np.ndarray:
        """Distances from one vertex to every vertex, by a single traversal."""
        _check_index(source, self.n)
        dist = np.full(self.n, -1.0)
        dist[source] = 0.0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u, w in self.adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + w
                    queue.append(u)
        return dist

    def __eq__(self, other):
        if not isinstance(other, WeightedTree):
            return NotImplemented
        return self.n == other.n and self.root == other.root and self.edges == other.edges

    def __repr__(self):
        return f"WeightedTree(n={self.n}, root={self.root}, weight={self.weight:.6g})"


@dataclass(frozen=True)
class Metric:
    """A finite metric: tree-induced, Euclidean point set, or explicit matrix.

    Exactly one of ``tree``, ``points`` or ``matrix`` is set; use the
    ``from_*`` constructors.
    """

    kind: str
    tree: WeightedTree | None = None
    points: np.ndarray | None = None
    matrix: np.ndarray | None = None

    @classmethod
    def from_tree(cls, tree: WeightedTree) -> "Metric":
        return cls("tree", tree=tree)

    @classmethod
    def from_points(cls, points) -> "Metric":
        pts = np.array(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValidationError("point set must be a non-empty n x d array with d >= 1")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("point coordinates must be finite")
        pts.setflags(write=False)
        return cls("points", points=pts)

    @classmethod
    def from_matrix(cls, matrix, check_triangle: bool = False) -> "Metric":
        m = np.array(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValidationError("distance matrix must be square and non-empty")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValidationError("distance matrix entries must be finite and >= 0")
        if np.any(np.diag(m) != 0):
            raise ValidationError("distance matrix must have a zero diagonal")
        scale = max(float(m.max()), 1.0)
        bad = np.argwhere(np.abs(m - m.T) > REL_TOL * scale)
        if bad.size:
            i, j = bad[0]
            raise ValidationError(f"not symmetric at ({i}, {j}): {m[i, j]} vs {m[j, i]}")
        if check_triangle:
            for k in range(m.shape[0]):
                viol = m > m[:, k][:, None] + m[k, :][None, :] + REL_TOL * scale
                if viol.any():
                    i, j = np.argwhere(viol)[0]
                    raise ValidationError(f"triangle inequality fails for ({i}, {j}) via {k}")
        m.setflags(write=False)
        return cls("matrix", matrix=m)

    @property
    def size(self) -> int:
        if self.kind == "tree":
            return self.tree.n
        if self.kind == "points":
            return self.points.shape[0]
        return self.matrix.shape[0]

    def __len__(self) -> int:
        return self.size

    def distance(self, u: int, v: int) -> float:
        n = self.size
        _check_index(u, n)
        _check_index(v, n)
        if u == v:
            return 0.0
        if self.kind == "tree":
            return self.tree.distance(u, v)
        if self.kind == "points":
            return float(np.linalg.norm(self.points[u] - self.points[v]))
        return float(self.matrix[u, v])

    def distances_from(self, u: int) -> np.ndarray:
        """Row of the distance matrix for ``u``."""
        _check_index(u, self.size)
        if self.kind == "tree":
            return self.tree.distances_from(u)
        if self.kind == "points":
            return np.linalg.norm(self.points - self.points[u], axis=1)
        return np.array(self.matrix[u])

    def pair_distances(self, us, vs) -> np.ndarray:
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if self.kind == "tree":
            return np.asarray(self.tree.distance(us, vs), dtype=np.float64)
        if self.kind == "points":
            return np.linalg.norm(self.points[us] - self.points[vs], axis=1)
        return self.matrix[us, vs]


def metric_distance(m: Metric, u: int, v: int) -> float:
    return m.distance(u, v)


def uniform_line(n: int) -> Metric:
    """``n`` points at coordinates ``i/n`` for ``0 <= i < n``."""
    if n < 1:
        raise ValueError("uniform_line needs n >= 1")
    return Metric.from_points(np.arange(n, dtype=np.float64) / n)


def path_tree(n: int, weight: float = 1.0) -> WeightedTree:
    """Path ``0 - 1 - ... - n-1`` with constant edge weight."""
    return WeightedTree(n, [(i, i + 1, weight) for i in range(n - 1)])


def mst_edges(m: Metric) -> list[tuple[int, int, float]]:
    """Minimum spanning tree of the complete graph under ``m`` (dense Prim).

    Ties are broken by the smallest vertex index, so the result is
    deterministic.
    """
    n = m.size
    if m.kind == "tree":
        return sorted((min(u, v), max(u, v), w) for u, v, w in m.tree.edges)
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    link = np.full(n, -1, dtype=np.int64)
    best[0] = 0.0
    out = []
    for _ in range(n):
        cand = np.where(in_tree, np.inf, best)
        v = int(np.argmin(cand))
        in_tree[v] = True
        if link[v] >= 0:
            out.append((int(min(v, link[v])), int(max(v, link[v])), float(best[v])))
        row = m.distances_from(v)
        better = (~in_tree) & (row < best)
        best[better] = row[better]
        link[better] = v
    return out


def mst_weight(m: Metric) -> float:
    if m.kind == "tree":
        return m.tree.weight
    return math.fsum(w for _, _, w in mst_edges(m))


@dataclass
class SpannerGraph:
    """Weighted undirected edge list over real and auxiliary vertices.

    Vertices ``0..real_count-1`` are metric points; indices up to
    ``total_count`` are auxiliary (Steiner) vertices.
    """

    real_count: int
    total_count: int
    edges: list[tuple[int, int, float]] = field(default_factory=list)
    declared_k: int = 1
    declared_t: float = 1.0

    def __post_init__(self):
        if self.real_count < 0 or self.total_count < self.real_count:
            raise ValidationError("total_count must be >= real_count >= 0")
        seen = set()
        for i, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < self.total_count and 0 <= v < self.total_count):
                raise ValidationError(f"edge {i}: vertex index out of range")
            if u == v:
                raise ValidationError(f"edge {i}: self-loop at {u}")
            if not math.isfinite(w) or w < 0:
                raise ValidationError(f"edge {i}: weight must be finite and >= 0")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"edge {i}: duplicate edge {key}")
            seen.add(key)

    @property
    def weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    @property
    def real_weight(self) -> float:
        """Weight of edges whose endpoints are both real points."""
        r = self.real_count
        return math.fsum(w for u, v, w in self.edges if u < r and v < r)

    def check_against(self, m: Metric) -> None:
        """Reject edges between real points that undershoot the metric."""
        if m.size != self.real_count:
            raise ValidationError(f"metric has {m.size} points, spanner has {self.real_count}")
        r = self.real_count
        real = [(u, v, w) for u, v, w in self.edges if u < r and v < r]
        if not real:
            return
        us, vs, ws = (np.array(c) for c in zip(*real))
        d = m.pair_distances(us, vs)
        bad = np.flatnonzero(ws < d - REL_TOL * np.maximum(d, 1.0))
        if bad.size:
            i = bad[0]
            raise ValidationError(
                f"edge ({us[i]}, {vs[i]}) has weight {ws[i]} below metric distance {d[i]}"
            )

    def edge_arrays(self):
        if not self.edges:
            z = np.zeros(0, dtype=np.int64)
            return z, z, np.zeros(0)
        u, v, w = zip(*self.edges)
        return np.array(u, dtype=np.int64), np.array(v, dtype=np.int64), np.array(w, dtype=np.float64)


@dataclass(frozen=True)
class SpannerStats:
    weight: float
    mst_weight: float
    lightness: float
    max_stretch: float
    hop_diameter_at_t: float
    edge_count: int
    sparsity: float
