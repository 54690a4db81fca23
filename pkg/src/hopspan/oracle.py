"""Exact minimum-lightness oracle for hop-bounded connectivity on tiny metrics.

Searches all edge subsets of the complete graph for the lightest one in
which every pair of points is joined by a path of at most ``k`` edges.
Stretch is not constrained, so the optimum lower-bounds every finite-stretch
variant.
"""
from __future__ import annotations

import math

from .metric import Metric, SpannerGraph, WeightedTree, mst_edges, mst_weight
from .spanner import spanner_edges

MAX_POINTS = 10


def _hop_connected(adj: list[int], k: int, full: int) -> bool:
    n = len(adj)
    reach = [1 << v for v in range(n)]
    for _ in range(k):
        nxt = []
        for v in range(n):
            r = reach[v]
            a = adj[v]
            while a:
                low = a & -a
                r |= reach[low.bit_length() - 1]
                a ^= low
            nxt.append(r)
        if nxt == reach:
            break
        reach = nxt
    return all(r == full for r in reach)


def optimal_lightness(m: Metric, k: int) -> tuple[float, SpannerGraph]:
    """Minimum weight / MST weight over all hop-``k``-connected edge sets.

    Branch and bound over edges in decreasing weight order, trying to
    exclude each edge before including it. A node is pruned when its
    included weight plus, for every vertex still without an included edge,
    half its lightest available incident edge reaches the incumbent, or
    when the edges still available can no longer hop-connect all pairs.
    The incumbent starts from the tree-metric construction on the MST.
    """
    n = m.size
    if n > MAX_POINTS:
        raise ValueError(f"oracle is capped at {MAX_POINTS} points, got {n}")
    if k < 1:
        raise ValueError("k must be >= 1")
    base = mst_weight(m)
    if n == 1:
        return 1.0, SpannerGraph(1, 1, [], declared_k=k, declared_t=math.inf)

    edges = sorted(
        ((m.distance(u, v), u, v) for u in range(n) for v in range(u + 1, n)),
        key=lambda e: (-e[0], e[1], e[2]),
    )
    full = (1 << n) - 1

    mst_tree = WeightedTree(n, mst_edges(m))
    start = {(u, v) for u, v, _ in spanner_edges(mst_tree, k)}
    best_set = [(u, v) for _, u, v in edges if (u, v) in start]
    best = [math.fsum(m.distance(u, v) for u, v in best_set)]
    eps = 1e-12 * max(best[0], 1.0)

    # lightest incident edge among indices >= i, per vertex
    tail_min = [[math.inf] * n for _ in range(len(edges) + 1)]
    for i in range(len(edges) - 1, -1, -1):
        row = list(tail_min[i + 1])
        w, u, v = edges[i]
        row[u] = min(row[u], w)
        row[v] = min(row[v], w)
        tail_min[i] = row

    chosen: list[int] = []

    def bound(i: int, inc_w: float, inc_adj: list[int]) -> float:
        lb = inc_w
        tm = tail_min[i]
        for v in range(n):
            if not inc_adj[v]:
                lb += tm[v] / 2
        return lb

    def search(i: int, inc_w: float, inc_adj: list[int], avail_adj: list[int]) -> None:
        if bound(i, inc_w, inc_adj) >= best[0] - eps:
            return
        if _hop_connected(inc_adj, k, full):
            best[0] = inc_w
            best_set[:] = [(edges[j][1], edges[j][2]) for j in chosen]
            return
        if i == len(edges):
            return
        w, u, v = edges[i]
        bu, bv = 1 << u, 1 << v
        avail_adj[u] ^= bv
        avail_adj[v] ^= bu
        if _hop_connected(avail_adj, k, full):
            search(i + 1, inc_w, inc_adj, avail_adj)
        avail_adj[u] ^= bv
        avail_adj[v] ^= bu
        inc_adj[u] ^= bv
        inc_adj[v] ^= bu
        chosen.append(i)
        search(i + 1, inc_w + w, inc_adj, avail_adj)
        chosen.pop()
        inc_adj[u] ^= bv
        inc_adj[v] ^= bu

    search(0, 0.0, [0] * n, [full ^ (1 << v) for v in range(n)])
    witness = sorted((min(u, v), max(u, v), m.distance(u, v)) for u, v in best_set)
    total = math.fsum(w for _, _, w in witness)
    light = total / base if base > 0 else 1.0
    return light, SpannerGraph(n, n, witness, declared_k=k, declared_t=math.inf)
