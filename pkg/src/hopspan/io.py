"""Reading and writing trees, metrics, spanners and covers.

Floats are written with 17 significant digits so that files round-trip
exactly. Loaders raise :class:`FormatError` naming the offending position.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .cover import TreeCover
from .metric import Metric, SpannerGraph, ValidationError, WeightedTree


class FormatError(ValidationError):
    """Malformed input file."""


def fmt(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return format(x, ".17g")


def _edges_json(edges, indent: str) -> str:
    if not edges:
        return "[]"
    rows = [f"{indent}  [{u}, {v}, {fmt(w)}]" for u, v, w in edges]
    return "[\n" + ",\n".join(rows) + f"\n{indent}]"


def _read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top-level value must be an object")
    return data


def _field(data: dict, key: str, where: str):
    if key not in data:
        raise FormatError(f"{where}: missing key {key!r}")
    return data[key]


def _as_float(x, where: str) -> float:
    if isinstance(x, str) and x in ("inf", "-inf", "nan"):
        return float(x)
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _as_int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def _parse_edges(raw, where: str) -> list[tuple[int, int, float]]:
    if not isinstance(raw, list):
        raise FormatError(f"{where}: 'edges' must be a list")
    out = []
    for i, e in enumerate(raw):
        pos = f"{where}: edges[{i}]"
        if not isinstance(e, list) or len(e) != 3:
            raise FormatError(f"{pos}: expected [u, v, w]")
        out.append((_as_int(e[0], pos), _as_int(e[1], pos), _as_float(e[2], pos)))
    return out


# trees -----------------------------------------------------------------

def tree_to_dict(t: WeightedTree) -> dict:
    return {"n": t.n, "root": t.root, "edges": t.edges}


def _tree_from_dict(data: dict, where: str) -> WeightedTree:
    n = _as_int(_field(data, "n", where), f"{where}: n")
    root = _as_int(data.get("root", 0), f"{where}: root")
    edges = _parse_edges(_field(data, "edges", where), where)
    try:
        return WeightedTree(n, edges, root=root)
    except (ValidationError, IndexError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _tree_body(t: WeightedTree, indent: str) -> str:
    return f'"n": {t.n},\n{indent}"root": {t.root},\n{indent}"edges": {_edges_json(t.edges, indent)}'


def dumps_tree(t: WeightedTree) -> str:
    return "{\n  " + _tree_body(t, "  ") + "\n}\n"


def save_tree(t: WeightedTree, path) -> None:
    Path(path).write_text(dumps_tree(t))


def load_tree(path) -> WeightedTree:
    return _tree_from_dict(_read_json(path), str(path))


# point sets and matrices -------------------------------------------------

def _read_csv(path) -> list[list[float]]:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise FormatError(f"{path}: line {lineno}: non-numeric entry") from None
            if len(rows[-1]) != len(rows[0]):
                raise FormatError(
                    f"{path}: line {lineno}: expected {len(rows[0])} entries, got {len(rows[-1])}"
                )
    if not rows:
        raise FormatError(f"{path}: empty file")
    return rows


def _write_csv(rows, path) -> None:
    Path(path).write_text("".join(",".join(fmt(x) for x in row) + "\n" for row in rows))


def load_points(path) -> Metric:
    try:
        return Metric.from_points(np.array(_read_csv(path)))
    except ValidationError as exc:
        raise FormatError(f"{path}: {exc}") from None


def save_points(m: Metric, path) -> None:
    _write_csv(m.points, path)


def load_matrix(path, check_triangle: bool = False) -> Metric:
    rows = _read_csv(path)
    if len(rows) != len(rows[0]):
        raise FormatError(f"{path}: matrix has {len(rows)} rows and {len(rows[0])} columns")
    try:
        return Metric.from_matrix(np.array(rows), check_triangle=check_triangle)
    except ValidationError as exc:
        raise FormatError(f"{path}: {exc}") from None


def save_matrix(m: Metric, path) -> None:
    _write_csv(m.matrix, path)


def load_metric(path, kind: str | None = None) -> Metric:
    """Load a metric file; ``kind`` is 'tree', 'points' or 'matrix'.

    Without ``kind``: ``.json`` is a tree; a CSV is a matrix when it is
    square with a zero diagonal, otherwise a point set.
    """
    path = Path(path)
    if kind is None:
        if path.suffix.lower() == ".json":
            kind = "tree"
        else:
            rows = _read_csv(path)
            square = len(rows) == len(rows[0]) and all(rows[i][i] == 0 for i in range(len(rows)))
            kind = "matrix" if square and len(rows) > 1 else "points"
    if kind == "tree":
        return Metric.from_tree(load_tree(path))
    if kind == "points":
        return load_points(path)
    if kind == "matrix":
        return load_matrix(path)
    raise ValueError(f"unknown metric kind {kind!r}")


# spanners ---------------------------------------------------------------

def dumps_spanner(g: SpannerGraph) -> str:
    return (
        "{\n"
        f'  "real": {g.real_count},\n'
        f'  "total": {g.total_count},\n'
        f'  "k": {g.declared_k},\n'
        f'  "t": {fmt(g.declared_t)},\n'
        f'  "edges": {_edges_json(g.edges, "  ")}\n'
        "}\n"
    )


def save_spanner(g: SpannerGraph, path) -> None:
    Path(path).write_text(dumps_spanner(g))


def load_spanner(path) -> SpannerGraph:
    where = str(path)
    data = _read_json(path)
    real = _as_int(_field(data, "real", where), f"{where}: real")
    total = _as_int(_field(data, "total", where), f"{where}: total")
    k = _as_int(_field(data, "k", where), f"{where}: k")
    t = _as_float(_field(data, "t", where), f"{where}: t")
    edges = _parse_edges(_field(data, "edges", where), where)
    try:
        return SpannerGraph(real, total, edges, declared_k=k, declared_t=t)
    except ValidationError as exc:
        raise FormatError(f"{where}: {exc}") from None


# covers -----------------------------------------------------------------

def dumps_cover(c: TreeCover) -> str:
    parts = []
    for t, pm in zip(c.trees, c.point_maps):
        ind = "      "
        pmap = ", ".join(f"[{p}, {int(v)}]" for p, v in enumerate(pm))
        parts.append("    {\n" + ind + _tree_body(t, ind) + f',\n{ind}"point_map": [{pmap}]\n    }}')
    return (
        "{\n"
        f'  "gamma": {c.size},\n'
        f'  "t": {fmt(c.declared_stretch)},\n'
        f'  "L": {fmt(c.declared_lightness)},\n'
        '  "trees": [\n' + ",\n".join(parts) + "\n  ]\n}\n"
    )


def save_cover(c: TreeCover, path) -> None:
    Path(path).write_text(dumps_cover(c))


def load_cover(path) -> TreeCover:
    where = str(path)
    data = _read_json(path)
    raw_trees = _field(data, "trees", where)
    if not isinstance(raw_trees, list) or not raw_trees:
        raise FormatError(f"{where}: 'trees' must be a non-empty list")
    gamma = _as_int(data.get("gamma", len(raw_trees)), f"{where}: gamma")
    if gamma != len(raw_trees):
        raise FormatError(f"{where}: gamma is {gamma} but {len(raw_trees)} trees are listed")
    trees, maps = [], []
    for j, raw in enumerate(raw_trees):
        pos = f"{where}: trees[{j}]"
        if not isinstance(raw, dict):
            raise FormatError(f"{pos}: expected an object")
        t = _tree_from_dict(raw, pos)
        pairs = _field(raw, "point_map", pos)
        if not isinstance(pairs, list):
            raise FormatError(f"{pos}: 'point_map' must be a list")
        pm = np.full(len(pairs), -1, dtype=np.int64)
        for i, pair in enumerate(pairs):
            ppos = f"{pos}: point_map[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise FormatError(f"{ppos}: expected [point, vertex]")
            p, v = _as_int(pair[0], ppos), _as_int(pair[1], ppos)
            if not 0 <= p < len(pairs) or pm[p] >= 0:
                raise FormatError(f"{ppos}: point {p} out of range or repeated")
            pm[p] = v
        trees.append(t)
        maps.append(pm)
    t_decl = _as_float(data.get("t", 1.0), f"{where}: t")
    l_decl = _as_float(data.get("L", 1.0), f"{where}: L")
    try:
        return TreeCover(trees, maps, t_decl, l_decl)
    except ValidationError as exc:
        raise FormatError(f"{where}: {exc}") from None
