"""Command-line entry point: ``hopspan <subcommand> ...``.

Exit status is 0 on success, 2 when an input or a result fails validation,
and 1 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .bench import bench_sweep, check_family, write_csv
from .cover import cover_stats, identity_cover, shifted_quadtree_cover
from .decompose import split
from .metric import Metric, ValidationError, uniform_line
from .oracle import optimal_lightness
from .spanner import build_tree_spanner, cover_to_spanner
from .verify import verify

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _cmd_build(a) -> int:
    if a.k < 1:
        raise UsageError("--k must be >= 1")
    if a.cover and a.cover_quadtree:
        raise UsageError("--cover and --cover-quadtree are mutually exclusive")
    if a.tree:
        m = Metric.from_tree(io.load_tree(a.tree))
        if a.cover_quadtree:
            raise UsageError("--cover-quadtree needs --points")
        if a.cover:
            g = cover_to_spanner(io.load_cover(a.cover), a.k, m, trust=a.trust_cover)
        else:
            g = build_tree_spanner(m.tree, a.k)
    elif a.points:
        m = io.load_points(a.points)
        cover = io.load_cover(a.cover) if a.cover else shifted_quadtree_cover(m)
        g = cover_to_spanner(cover, a.k, m, trust=a.trust_cover or not a.cover)
    else:
        m = io.load_matrix(a.matrix)
        if not a.cover:
            raise UsageError("--matrix needs --cover")
        g = cover_to_spanner(io.load_cover(a.cover), a.k, m, trust=a.trust_cover)
    io.save_spanner(g, a.out)
    _emit({"out": a.out, "real": g.real_count, "total": g.total_count, "k": g.declared_k,
           "edge_count": len(g.edges), "weight": g.weight, "real_weight": g.real_weight})
    return EXIT_OK


def _cmd_verify(a) -> int:
    g = io.load_spanner(a.spanner)
    m = io.load_metric(a.metric, a.metric_kind)
    k = a.k if a.k is not None else g.declared_k
    t = a.t if a.t is not None else g.declared_t
    if k < 1:
        raise UsageError("--k must be >= 1")
    g.check_against(m)
    rep = verify(g, m, k, t)
    out = rep.to_dict()
    out["real_weight"] = g.real_weight
    _emit(out)
    return EXIT_OK if rep.violations == 0 else EXIT_INVALID


def _cmd_decompose(a) -> int:
    if a.ell < 1:
        raise UsageError("--ell must be >= 1")
    t = io.load_tree(a.tree)
    s = split(t, a.ell)
    _emit({"n": t.n, "ell": a.ell, "separator": s.separator,
           "component_sizes": [len(c) for c in s.components],
           "boundary": s.boundary})
    return EXIT_OK


def _cmd_cover(a) -> int:
    m = io.load_points(a.points)
    c = shifted_quadtree_cover(m, base_cells=a.base_cells)
    io.save_cover(c, a.out)
    stats = cover_stats(c, m)
    _emit({"out": a.out, "gamma": stats.size, "measured_stretch": stats.measured_stretch,
           "measured_lightness": stats.measured_lightness,
           "tree_sizes": [t.n for t in c.trees]})
    return EXIT_OK


def _cmd_oracle(a) -> int:
    if a.family != "uniform-line":
        raise UsageError("oracle supports --family uniform-line")
    if a.n < 1 or a.k < 1:
        raise UsageError("--n and --k must be >= 1")
    try:
        light, g = optimal_lightness(uniform_line(a.n), a.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit({"family": a.family, "n": a.n, "k": a.k, "lightness": light, "weight": g.weight,
           "edges": [list(e) for e in g.edges]})
    return EXIT_OK


def _cmd_bench(a) -> int:
    if not a.n or not a.k:
        raise UsageError("--n and --k need at least one value each")
    if min(a.n) < 1 or min(a.k) < 1:
        raise UsageError("--n and --k values must be >= 1")
    try:
        check_family(a.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = bench_sweep(a.family, a.n, a.k, seed=a.seed, timing=a.timing)
    write_csv(rows, a.csv)
    _emit({"csv": a.csv, "rows": len(rows)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopspan", description="Light spanners with bounded hop-diameter.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("build", help="build a k-hop spanner")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--tree")
    src.add_argument("--points")
    src.add_argument("--matrix")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--cover")
    b.add_argument("--cover-quadtree", action="store_true")
    b.add_argument("--trust-cover", action="store_true", help="skip the domination check")
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_build)

    v = sub.add_parser("verify", help="measure stretch, lightness and hop-diameter")
    v.add_argument("--spanner", required=True)
    v.add_argument("--metric", required=True)
    v.add_argument("--metric-kind", choices=["tree", "points", "matrix"])
    v.add_argument("--k", type=int)
    v.add_argument("--t", type=float)
    v.set_defaults(func=_cmd_verify)

    d = sub.add_parser("decompose", help="print a tree separator")
    d.add_argument("--tree", required=True)
    d.add_argument("--ell", type=int, required=True)
    d.set_defaults(func=_cmd_decompose)

    c = sub.add_parser("cover", help="build a shifted-quadtree tree cover")
    c.add_argument("--points", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--base-cells", type=int, default=1)
    c.set_defaults(func=_cmd_cover)

    o = sub.add_parser("oracle", help="exact minimum lightness on a tiny metric")
    o.add_argument("--family", required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--k", type=int, required=True)
    o.set_defaults(func=_cmd_oracle)

    s = sub.add_parser("bench", help="sweep a family and write CSV")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--k", type=_int_list, required=True)
    s.add_argument("--csv", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timing", action="store_true", help="record wall-clock build time")
    s.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"hopspan: usage error: {exc}\n")
        return EXIT_USAGE
    except (ValidationError, IndexError) as exc:
        sys.stderr.write(f"hopspan: invalid input: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"hopspan: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
