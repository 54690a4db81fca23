"""Exact hop-bounded spanners of tree metrics and the tree-cover reduction.

Every emitted edge is weighted by the distance of its endpoints in the
original input tree, so the spanner never undershoots the tree metric.
"""
from __future__ import annotations

import math

import numpy as np

from .cover import TreeCover, check_domination
from .decompose import Separator, centroid, components_without, split
from .metric import Metric, SpannerGraph, ValidationError, WeightedTree


def _iroot_floor(num: int, k: int) -> int:
    """Largest integer r with r**k <= num."""
    r = int(round(num ** (1.0 / k)))
    while r > 0 and r ** k > num:
        r -= 1
    while (r + 1) ** k <= num:
        r += 1
    return r


def choose_ell(n: int, k: int) -> int:
    """Component size cap for one level of the k >= 3 recursion.

    ``floor(n^(2/3))`` for k = 3, ``k`` when k >= 4 and n <= 2k^2, else
    ``floor(2 n^(2/k))``. Computed with exact integer roots so that, e.g.,
    n = 1000, k = 3 gives 100 rather than 99.
    """
    if k < 3:
        raise ValueError("choose_ell needs k >= 3")
    if n < 1:
        raise ValueError("choose_ell needs n >= 1")
    if k == 3:
        ell = _iroot_floor(n * n, 3)
    elif n <= 2 * k * k:
        ell = k
    else:
        ell = _iroot_floor(2 ** k * n * n, k)
    return max(ell, 1)


def induced_subtree(t: WeightedTree, verts) -> tuple[WeightedTree, list[int]]:
    """Subtree of ``t`` spanned by the connected vertex set ``verts``.

    Returns the re-indexed tree (local vertex ``i`` is ``verts[i]`` after
    sorting) and the local-to-``t`` index map.
    """
    verts = sorted(verts)
    local = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for u, w in t.adj[v]:
            if u > v and u in local:
                edges.append((local[v], local[u], w))
    return WeightedTree(len(verts), edges), verts


def build_contracted_tree(t: WeightedTree, s: Separator) -> tuple[WeightedTree, list[int]]:
    """Tree on the separator vertices preserving ``t``'s distances among them.

    Edges are the tree edges with both ends in the separator plus one
    shortcut ``(u, v)`` per component bordered by two separator vertices.
    Returns the tree (re-indexed densely) and the local-to-``t`` index map.
    """
    if not s.separator:
        raise ValueError("empty separator")
    xs = sorted(s.separator)
    local = {v: i for i, v in enumerate(xs)}
    edges = []
    for u, v, w in t.edges:
        if u in local and v in local:
            edges.append((local[u], local[v], w))
    for comp, bnd in zip(s.components, s.boundary):
        if len(bnd) == 2:
            a, b = bnd
            if a not in local or b not in local:
                raise ValidationError("separator inconsistent with tree: boundary outside separator")
            edges.append((local[a], local[b], t.distance(a, b)))
        elif len(bnd) != 1:
            raise ValidationError(f"separator inconsistent with tree: component has {len(bnd)} boundary vertices")
    try:
        return WeightedTree(len(xs), edges), xs
    except ValidationError as exc:
        raise ValidationError(f"separator inconsistent with tree: {exc}") from None


def _spanner_pairs(t: WeightedTree, k: int, on_contract=None):
    """Yield arrays of (u, v) vertex pairs of ``t`` forming the spanner edge set.

    ``on_contract(tx, ids)``, if given, sees every contracted tree built
    during the recursion together with its vertices' indices in ``t``.
    """
    n_all = t.n
    work = [(t, np.arange(n_all), k)]
    while work:
        sub, idx, kk = work.pop()
        n = sub.n
        if n <= kk:
            if sub.edges:
                e = np.array([(u, v) for u, v, _ in sub.edges], dtype=np.int64)
                yield idx[e[:, 0]], idx[e[:, 1]]
            continue
        if kk == 1:
            a, b = np.triu_indices(n, k=1)
            yield idx[a], idx[b]
            continue
        if kk == 2:
            c = centroid(sub)
            others = np.array([v for v in range(n) if v != c], dtype=np.int64)
            yield np.full(len(others), idx[c]), idx[others]
            for comp in components_without(sub, [c]):
                child, cmap = induced_subtree(sub, comp)
                work.append((child, idx[cmap], 2))
            continue
        ell = min(choose_ell(n, kk), n - 1)
        sep = split(sub, ell)
        for comp, bnd in zip(sep.components, sep.boundary):
            if not bnd:
                raise RuntimeError("component without boundary in a connected tree")
            comp_arr = np.asarray(comp, dtype=np.int64)
            for b in bnd:
                yield np.full(len(comp_arr), idx[b]), idx[comp_arr]
            child, cmap = induced_subtree(sub, comp)
            work.append((child, idx[cmap], kk))
        tx, xmap = build_contracted_tree(sub, sep)
        if on_contract is not None:
            on_contract(tx, idx[xmap])
        work.append((tx, idx[xmap], kk - 2))


def spanner_edges(t: WeightedTree, k: int, on_contract=None) -> list[tuple[int, int, float]]:
    """Deduplicated, sorted edge list of the exact k-hop spanner of ``t``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    chunks = list(_spanner_pairs(t, k, on_contract))
    if not chunks:
        return []
    us = np.concatenate([c[0] for c in chunks])
    vs = np.concatenate([c[1] for c in chunks])
    lo, hi = np.minimum(us, vs), np.maximum(us, vs)
    keys = np.unique(lo * t.n + hi)
    lo, hi = keys // t.n, keys % t.n
    w = np.asarray(t.distance(lo, hi), dtype=np.float64)
    return [(int(a), int(b), float(c)) for a, b, c in zip(lo, hi, w)]


def build_tree_spanner(t: WeightedTree, k: int, on_contract=None) -> SpannerGraph:
    """1-spanner of the metric induced by ``t`` with hop-diameter ``k``.

    Follows the recursive construction: the tree itself when n <= k, a
    clique for k = 1, centroid stars for k = 2, and for k >= 3 a separator
    split whose components link to their boundary vertices, recurse with
    ``k``, and whose contracted separator tree recurses with ``k - 2``.
    """
    return SpannerGraph(t.n, t.n, spanner_edges(t, k, on_contract), declared_k=k, declared_t=1.0)


def cover_to_spanner(c: TreeCover, k: int, m: Metric | None = None, trust: bool = False) -> SpannerGraph:
    """Union of the k-hop tree spanners of every cover tree.

    Real points keep their indices; each tree's auxiliary vertices get their
    own block above ``real_count``. Where two trees contribute the same
    undirected edge the lighter copy is kept.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if c.size == 0:
        raise ValidationError("empty cover")
    n = c.real_count
    if m is not None:
        if m.size != n:
            raise ValidationError(f"cover maps {n} points but the metric has {m.size}")
        if not trust:
            check_domination(c, m)
    best: dict[tuple[int, int], float] = {}
    next_aux = n
    for t, pm in zip(c.trees, c.point_maps):
        relabel = np.full(t.n, -1, dtype=np.int64)
        relabel[pm] = np.arange(n)
        aux = np.flatnonzero(relabel < 0)
        relabel[aux] = next_aux + np.arange(len(aux))
        next_aux += len(aux)
        for u, v, w in spanner_edges(t, k):
            a, b = int(relabel[u]), int(relabel[v])
            key = (a, b) if a < b else (b, a)
            if key not in best or w < best[key]:
                best[key] = w
    edges = [(a, b, w) for (a, b), w in sorted(best.items())]
    t_decl = c.declared_stretch if math.isfinite(c.declared_stretch) else 1.0
    return SpannerGraph(n, next_aux, edges, declared_k=k, declared_t=t_decl)
