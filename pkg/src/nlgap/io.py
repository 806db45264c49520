"""Plain-text file formats for graphs, metrics, point configurations and ``w``.

All formats are UTF-8, ignore blank lines and ``#`` comments, and accept
numbers as integers, ``p/q`` rationals or decimal floats.  Rationals
round-trip exactly.

graph::

    graph <n_vertices> <n_edges>
    u v weight            (one line per edge, 0-based)

metric::

    metric <k>
    d_00 d_01 ...         (k rows of k entries)

points::

    points <k> <dim>
    x_1 ... x_dim         (k rows)

w::

    w <n_edges>
    u v weight
"""

from __future__ import annotations

from pathlib import Path
from . import errors
from .arith import format_number, parse_number
from .graph import WeightedGraph, build_graph
from .metric import EuclideanConfig, FiniteMetricSpace, validate_metric
from .paths import EdgeWeightW, make_w


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _header(rows, tag: str, nargs: int) -> list[int]:
    if not rows or rows[0][0] != tag or len(rows[0]) != nargs + 1:
        raise errors.FileFormatError(f"expected header '{tag}' with {nargs} integer field(s)")
    try:
        return [int(x) for x in rows[0][1:]]
    except ValueError:
        raise errors.FileFormatError(f"non-integer field in '{tag}' header") from None


def _num(tok: str):
    try:
        return parse_number(tok)
    except (ValueError, ZeroDivisionError):
        raise errors.FileFormatError(f"bad number {tok!r}") from None


def _edge_rows(rows, count: int, tag: str):
    body = rows[1:]
    if len(body) != count:
        raise errors.FileFormatError(f"'{tag}' header promises {count} edges, found {len(body)}")
    out = []
    for r in body:
        if len(r) != 3:
            raise errors.FileFormatError(f"edge line needs 'u v weight', got {' '.join(r)!r}")
        try:
            u, v = int(r[0]), int(r[1])
        except ValueError:
            raise errors.FileFormatError(f"bad vertex index in {' '.join(r)!r}") from None
        out.append((u, v, _num(r[2])))
    return out


def parse_graph(text: str) -> WeightedGraph:
    rows = _lines(text)
    n, m = _header(rows, "graph", 2)
    return build_graph(n, _edge_rows(rows, m, "graph"))


def format_graph(g: WeightedGraph) -> str:
    lines = [f"graph {g.n} {g.num_edges}"]
    lines += [f"{u} {v} {format_number(w)}" for (u, v), w in zip(g.edges, g.weights)]
    return "\n".join(lines) + "\n"


def parse_metric(text: str) -> FiniteMetricSpace:
    rows = _lines(text)
    (k,) = _header(rows, "metric", 1)
    body = rows[1:]
    if len(body) != k or any(len(r) != k for r in body):
        raise errors.FileFormatError(f"metric {k} needs {k} rows of {k} entries")
    return validate_metric([[_num(t) for t in r] for r in body])


def format_metric(X: FiniteMetricSpace) -> str:
    lines = [f"metric {X.k}"]
    lines += [" ".join(format_number(x) for x in row) for row in X.as_matrix()]
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> EuclideanConfig:
    rows = _lines(text)
    k, dim = _header(rows, "points", 2)
    body = rows[1:]
    if len(body) != k or any(len(r) != dim for r in body):
        raise errors.FileFormatError(f"points {k} {dim} needs {k} rows of {dim} coordinates")
    return EuclideanConfig([[float(_num(t)) for t in r] for r in body])


def parse_w(text: str, g: WeightedGraph | None = None) -> EdgeWeightW:
    rows = _lines(text)
    (m,) = _header(rows, "w", 1)
    vals = {}
    for u, v, x in _edge_rows(rows, m, "w"):
        key = (u, v) if u < v else (v, u)
        if key in vals:
            raise errors.FileFormatError(f"duplicate w entry for edge {key}")
        vals[key] = x
    return make_w(vals, g, "file")


def format_w(w: EdgeWeightW) -> str:
    items = sorted(w.values.items())
    lines = [f"w {len(items)}"] + [f"{u} {v} {format_number(x)}" for (u, v), x in items]
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.FileFormatError(f"cannot read {path}: {exc.strerror}") from None


def read_graph(path) -> WeightedGraph:
    return parse_graph(read_text(path))


def read_metric(path) -> FiniteMetricSpace:
    return parse_metric(read_text(path))


def read_points(path) -> EuclideanConfig:
    return parse_points(read_text(path))


def read_w(path, g: WeightedGraph | None = None) -> EdgeWeightW:
    return parse_w(read_text(path), g)


def parse_map(text: str, n: int | None = None) -> tuple[int, ...]:
    try:
        f = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise errors.InvalidMap(f"map must be comma-separated point indices, got {text!r}") from None
    if n is not None and len(f) != n:
        raise errors.InvalidMap(f"map has {len(f)} entries, graph has {n} vertices")
    return f

