"""Light spanners with bounded hop-diameter.

Exact k-hop 1-spanners of tree metrics, the reduction from tree covers to
spanners of general metrics, and tools to measure stretch, lightness and
hop-diameter.
"""
from .cover import TreeCover, cover_stats, identity_cover, shifted_quadtree_cover
from .decompose import Separator, centroid, split
from .metric import (
    Metric,
    SpannerGraph,
    SpannerStats,
    ValidationError,
    WeightedTree,
    metric_distance,
    mst_weight,
    path_tree,
    uniform_line,
)
from .oracle import optimal_lightness
from .spanner import build_contracted_tree, build_tree_spanner, choose_ell, cover_to_spanner
from .verify import bounded_hop_apsp, hop_diameter, verify

__all__ = [
    "Metric", "SpannerGraph", "SpannerStats", "Separator", "TreeCover", "ValidationError",
    "WeightedTree", "bounded_hop_apsp", "build_contracted_tree", "build_tree_spanner",
    "centroid", "choose_ell", "cover_stats", "cover_to_spanner", "hop_diameter",
    "identity_cover", "metric_distance", "mst_weight", "optimal_lightness", "path_tree",
    "shifted_quadtree_cover", "split", "uniform_line", "verify",
]
