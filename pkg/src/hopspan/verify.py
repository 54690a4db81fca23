"""Bounded-hop distances, stretch/lightness verification and hop-diameter."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .metric import Metric, SpannerGraph, SpannerStats, ValidationError, mst_weight

INF = math.inf
STRETCH_TOL = 1e-9
FULL_SOURCES_LIMIT = 512
SAMPLE_PAIRS = 100_000
SAMPLE_SEED = 0
_CHUNK_CELLS = 1 << 22


class _Relaxer:
    """Synchronous min-plus relaxation over an undirected edge list."""

    def __init__(self, g: SpannerGraph):
        u, v, w = g.edge_arrays()
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        wt = np.concatenate([w, w])
        order = np.lexsort((src, dst))
        self.src, self.dst, self.wt = src[order], dst[order], wt[order]
        if len(self.dst):
            first = np.concatenate([[True], self.dst[1:] != self.dst[:-1]])
            self.starts = np.flatnonzero(first)
            self.targets = self.dst[self.starts]
        else:
            self.starts = self.targets = np.zeros(0, dtype=np.int64)
        self.n = g.total_count

    def initial(self, sources: np.ndarray) -> np.ndarray:
        d = np.full((len(sources), self.n), INF)
        d[np.arange(len(sources)), sources] = 0.0
        return d

    def step(self, d: np.ndarray) -> tuple[np.ndarray, bool]:
        """One more hop: ``d'[s][v] = min(d[s][v], min_(u,v) d[s][u] + w)``."""
        if not len(self.src):
            return d, False
        out = d.copy()
        rows = max(1, _CHUNK_CELLS // len(self.src))
        for lo in range(0, d.shape[0], rows):
            block = d[lo:lo + rows]
            cand = block[:, self.src] + self.wt
            best = np.minimum.reduceat(cand, self.starts, axis=1)
            out[lo:lo + rows, self.targets] = np.minimum(block[:, self.targets], best)
        return out, bool(np.any(out < d))


def bounded_hop_apsp(g: SpannerGraph, k: int, sources=None) -> np.ndarray:
    """Shortest path lengths using at most ``k`` edges.

    Row ``i`` holds distances from ``sources[i]`` (default: every vertex)
    to all ``g.total_count`` vertices; unreachable entries are ``inf``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    relax = _Relaxer(g)
    if sources is None:
        sources = np.arange(g.total_count)
    sources = np.asarray(sources, dtype=np.int64)
    d = relax.initial(sources)
    for _ in range(k):
        d, changed = relax.step(d)
        if not changed:
            break
    return d


@dataclass
class VerifyReport:
    stats: SpannerStats
    worst_pair: tuple[int, int, float]
    violations: int
    per_hop_profile: list[float] = field(default_factory=list)
    declared_k: int = 1
    declared_t: float = 1.0
    pairs_checked: int = 0
    exhaustive: bool = True

    def to_dict(self) -> dict:
        s = self.stats
        return {
            "k": self.declared_k,
            "t": self.declared_t,
            "weight": s.weight,
            "mst_weight": s.mst_weight,
            "lightness": s.lightness,
            "max_stretch": _num(s.max_stretch),
            "hop_diameter_at_t": _num(s.hop_diameter_at_t),
            "edge_count": s.edge_count,
            "sparsity": s.sparsity,
            "worst_pair": [self.worst_pair[0], self.worst_pair[1], _num(self.worst_pair[2])],
            "violations": self.violations,
            "per_hop_profile": [_num(x) for x in self.per_hop_profile],
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
        }


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _sources(n: int) -> tuple[np.ndarray, bool]:
    if n <= FULL_SOURCES_LIMIT:
        return np.arange(n), True
    count = min(n, math.ceil(SAMPLE_PAIRS / (n - 1)))
    rng = np.random.default_rng(SAMPLE_SEED)
    return np.sort(rng.choice(n, size=count, replace=False)), False


class _StretchProbe:
    """Stretch of real pairs (source, target) for a fixed set of sources."""

    def __init__(self, m: Metric, sources: np.ndarray):
        n = m.size
        self.sources = sources
        self.metric = np.vstack([m.distances_from(int(s)) for s in sources]) if len(sources) else np.zeros((0, n))
        # each unordered pair once when all sources are present; otherwise all targets != source
        mask = np.ones((len(sources), n), dtype=bool)
        mask[np.arange(len(sources)), sources] = False
        if len(sources) == n:
            mask &= sources[:, None] < np.arange(n)[None, :]
        self.mask = mask
        self.n = n

    def ratios(self, d: np.ndarray) -> np.ndarray:
        dd = d[:, : self.n]
        with np.errstate(divide="ignore", invalid="ignore"):
            r = dd / self.metric
        zero = self.metric == 0
        r[zero] = np.where(dd[zero] == 0, 1.0, INF)
        return np.where(self.mask, r, 1.0)


def verify(g: SpannerGraph, m: Metric, k: int, t: float) -> VerifyReport:
    """Measure ``g`` against ``m`` at ``k`` hops and stretch target ``t``.

    Exhaustive over all real pairs for up to 512 points; above that, a
    seeded sample of sources (about 1e5 pairs) against every other point.
    The hop-diameter at ``t`` is found by continuing the relaxation past
    ``k`` until every checked pair meets ``t`` or distances stop changing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.real_count != m.size:
        raise ValidationError(f"spanner has {g.real_count} real points, metric has {m.size}")
    n = m.size
    sources, exhaustive = _sources(n)
    probe = _StretchProbe(m, sources)
    relax = _Relaxer(g)
    d = relax.initial(sources)
    profile: list[float] = []
    hop_diam = INF if n > 1 else 0
    at_k = None
    h = 0
    max_hops = max(k, g.total_count - 1)
    while h < max_hops:
        d, changed = relax.step(d)
        h += 1
        r = probe.ratios(d)
        worst = float(r.max()) if r.size else 1.0
        if h <= k:
            profile.append(worst)
        if h == k:
            at_k = r
        if hop_diam == INF and worst <= t + STRETCH_TOL:
            hop_diam = h
        if not changed:
            # fixpoint: more hops change nothing
            if at_k is None:
                at_k = r
                profile.extend([worst] * (k - len(profile)))
            break
        if h >= k and hop_diam != INF:
            break
    if at_k.size and n > 1:
        i, j = np.unravel_index(int(np.argmax(at_k)), at_k.shape)
        worst_pair = (int(sources[i]), int(j), float(at_k[i, j]))
        max_stretch = worst_pair[2]
        violations = int(np.count_nonzero(at_k > t + STRETCH_TOL))
        checked = int(probe.mask.sum())
    else:
        worst_pair, max_stretch, violations, checked = (0, 0, 1.0), 1.0, 0, 0
    weight = g.weight
    base = mst_weight(m)
    light = weight / base if base > 0 else (1.0 if weight == 0 else INF)
    sparsity = len(g.edges) / (n - 1) if n > 1 else 0.0
    stats = SpannerStats(weight, base, light, max_stretch, hop_diam, len(g.edges), sparsity)
    return VerifyReport(stats, worst_pair, violations, profile, k, t, checked, exhaustive)


def hop_diameter(g: SpannerGraph, m: Metric, t: float):
    """Smallest hop count at which every checked pair meets stretch ``t``; ``inf`` if none."""
    return verify(g, m, 1, t).stats.hop_diameter_at_t
