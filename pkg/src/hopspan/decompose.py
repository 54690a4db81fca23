"""Tree separators: the centroid and the bounded-size, two-boundary split."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import WeightedTree


@dataclass(frozen=True)
class Separator:
    """Result of :func:`split`.

    Attributes
    ----------
    separator : list of int
        The cut vertex set, sorted.
    components : list of list of int
        Connected components of the tree minus ``separator``, each sorted and
        ordered by smallest vertex.
    boundary : list of list of int
        For each component, the separator vertices adjacent to it (1 or 2).
    ell : int
        Size cap that was requested.
    """

    separator: list[int]
    components: list[list[int]]
    boundary: list[list[int]]
    ell: int


def _children(t: WeightedTree) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in range(t.n)]
    for v in range(t.n):
        p = int(t.parent[v])
        if p >= 0:
            kids[p].append(v)
    return kids  # increasing index order since v ascends


def centroid(t: WeightedTree) -> int:
    """Smallest-index vertex whose removal leaves components of size <= n // 2."""
    n = t.n
    size = np.ones(n, dtype=np.int64)
    heaviest = np.zeros(n, dtype=np.int64)
    for v in reversed(t.order):
        p = t.parent[v]
        if p >= 0:
            size[p] += size[v]
            heaviest[p] = max(heaviest[p], size[v])
    worst = np.maximum(heaviest, n - size)
    return int(np.flatnonzero(worst <= n // 2)[0])


def components_without(t: WeightedTree, removed) -> list[list[int]]:
    """Connected components of ``t`` after deleting the vertices in ``removed``."""
    gone = np.zeros(t.n, dtype=bool)
    gone[list(removed)] = True
    label = np.full(t.n, -1, dtype=np.int64)
    comps = []
    for s in range(t.n):
        if gone[s] or label[s] >= 0:
            continue
        label[s] = len(comps)
        comp = [s]
        for v in comp:
            for u, _ in t.adj[v]:
                if not gone[u] and label[u] < 0:
                    label[u] = label[s]
                    comp.append(u)
        comps.append(sorted(comp))
    return comps


def split(t: WeightedTree, ell: int) -> Separator:
    """Greedy bottom-up separator.

    Every component of ``t`` minus the separator has at most ``ell``
    vertices and at most two tree edges leaving it, all into the separator;
    the separator has at most ``ceil(2n / ell)`` vertices.

    A vertex is cut when its open cluster (itself plus uncut children's
    clusters) reaches ``ell + 1`` vertices, or when that cluster touches two
    or more cut vertices from below.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    n = t.n
    if ell >= n:
        return Separator([], [list(range(n))], [[]], ell)
    kids = _children(t)
    cluster = np.zeros(n, dtype=np.int64)
    contact = np.zeros(n, dtype=np.int64)
    cut = np.zeros(n, dtype=bool)
    for v in reversed(t.order):
        c, x = 1, 0
        for ch in kids[v]:
            if cut[ch]:
                x += 1
            else:
                c += cluster[ch]
                x += contact[ch]
        if c >= ell + 1 or x >= 2:
            cut[v] = True
        else:
            cluster[v], contact[v] = c, x
    sep = [int(v) for v in np.flatnonzero(cut)]
    comps = components_without(t, sep)
    boundary = []
    for comp in comps:
        touch = {u for v in comp for u, _ in t.adj[v] if cut[u]}
        boundary.append(sorted(touch))
    return Separator(sep, comps, boundary, ell)
