"""Path assignments, the auxiliary edge weight ``w`` and the congestion bound.

For a path assignment ``γ`` and a positive edge weight ``w`` the congestion
of an oriented edge ``e`` is::

    A(w, e) = w(e) / (m(∅) m(e)) * Σ_{(x,y): γ(x,y) ∋ e} |γ(x,y)|_w m(x) m(y)

with ``|γ|_w = Σ 1/w(edge)``.  ``1 / max_e A(w, e)`` is a lower bound on the
nonlinear spectral gap against every metric space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import errors
from .arith import Number, normalize
from .graph import WeightedGraph, bfs_distances

Edge = tuple[int, int]


class PathAssignment:
    """One simple path per ordered pair of distinct vertices.

    Paths are stored as vertex sequences ``(x, ..., y)``.
    """

    def __init__(self, g: WeightedGraph, paths: Mapping[Edge, Sequence[int]], strategy: str = "custom"):
        self.graph = g
        self.strategy = strategy
        self._paths = {k: tuple(v) for k, v in paths.items()}
        self._validate()

    def _validate(self) -> None:
        g = self.graph
        expected = g.n * (g.n - 1)
        if len(self._paths) != expected:
            raise errors.InvalidPath(f"{len(self._paths)} paths given, {expected} ordered pairs need one")
        for (x, y), p in self._paths.items():
            if x == y or p[0] != x or p[-1] != y:
                raise errors.InvalidPath(f"path for ({x}, {y}) has endpoints {p[0]}, {p[-1]}")
            if len(set(p)) != len(p):
                raise errors.InvalidPath(f"path for ({x}, {y}) revisits a vertex")
            for u, v in zip(p, p[1:]):
                if not g.has_edge(u, v):
                    raise errors.InvalidPath(f"path for ({x}, {y}) uses non-edge ({u}, {v})")

    def __getitem__(self, pair: Edge) -> tuple[int, ...]:
        return self._paths[pair]

    def __len__(self) -> int:
        return len(self._paths)

    def items(self):
        return self._paths.items()

    def edges_of(self, pair: Edge) -> list[Edge]:
        p = self._paths[pair]
        return list(zip(p, p[1:]))

    def reversed_pairs(self) -> "PathAssignment":
        """Force ``γ(y, x)`` to be the reversal of ``γ(x, y)`` for ``x < y``."""
        out = {}
        for (x, y), p in self._paths.items():
            if x < y:
                out[(x, y)] = p
                out[(y, x)] = p[::-1]
        return PathAssignment(self.graph, out, self.strategy + "+reverse")


def _shortest_paths_from(g: WeightedGraph, x: int) -> dict[Edge, tuple[int, ...]]:
    dist = bfs_distances(g, x)
    # predecessor = smallest-index neighbour one hop closer to x
    pred = {}
    for v, dv in dist.items():
        if v != x:
            pred[v] = min(u for u in g.neighbors[v] if dist[u] == dv - 1)
    out = {}
    for y in range(g.n):
        if y == x:
            continue
        seq = [y]
        while seq[-1] != x:
            seq.append(pred[seq[-1]])
        out[(x, y)] = tuple(reversed(seq))
    return out


def bfs_paths(g: WeightedGraph) -> PathAssignment:
    """Hop-shortest paths; ties go through the smallest-index predecessor.

    ``γ(x, y)`` and ``γ(y, x)`` come from separate searches.
    """
    paths = {}
    for x in range(g.n):
        paths.update(_shortest_paths_from(g, x))
    return PathAssignment(g, paths, "bfs")


def tree_geodesic_paths(g: WeightedGraph) -> PathAssignment:
    """The unique simple path between each pair of vertices of a tree."""
    if not g.is_tree():
        raise errors.NotATree(f"{g.num_edges} edges on {g.n} vertices: graph has a cycle")
    pa = bfs_paths(g)
    pa.strategy = "tree"
    return pa


def _hamming_dim(g: WeightedGraph) -> int:
    n = g.n.bit_length() - 1
    if g.n != 1 << n:
        raise errors.NotAHammingCube(f"{g.n} vertices is not a power of two")
    for x in range(g.n):
        if g.neighbors[x] != tuple(sorted(x ^ (1 << i) for i in range(n))):
            raise errors.NotAHammingCube(f"vertex {x} is not adjacent to exactly its bit flips")
    return n


def hamming_bitfix_paths(g: WeightedGraph) -> PathAssignment:
    """Bit-fixing paths: flip differing bits from least to most significant."""
    n = _hamming_dim(g)
    paths = {}
    for x in range(g.n):
        for y in range(g.n):
            if x == y:
                continue
            seq = [x]
            cur = x
            diff = x ^ y
            for i in range(n):
                if diff >> i & 1:
                    cur ^= 1 << i
                    seq.append(cur)
            paths[(x, y)] = tuple(seq)
    return PathAssignment(g, paths, "bitfix")


# auxiliary weight w ---------------------------------------------------------

@dataclass(frozen=True)
class EdgeWeightW:
    """Strictly positive weight on the edges of a graph, symmetric in orientation."""

    values: Mapping[Edge, Number]
    exact: bool = True
    label: str = "custom"

    def __call__(self, u: int, v: int) -> Number:
        key = (u, v) if u < v else (v, u)
        try:
            return self.values[key]
        except KeyError:
            raise errors.EdgeOutsideSupport(f"edge ({u}, {v}) is outside the support of w") from None

    def scaled(self, c: Number) -> "EdgeWeightW":
        return make_w({e: v * c for e, v in self.values.items()}, label=self.label)


def make_w(values: Mapping[Edge, Number], g: WeightedGraph | None = None, label: str = "custom") -> EdgeWeightW:
    """Validate and normalise an edge -> weight mapping.

    When ``g`` is given, the support must be exactly its edge set.
    """
    keys = [(u, v) if u < v else (v, u) for u, v in values]
    vals, exact = normalize(values.values())
    for k, v in zip(keys, vals):
        if not v > 0:
            raise errors.RejectNonpositiveWeight(f"w{k} = {v} is not positive")
    w = dict(zip(keys, vals))
    if g is not None and set(w) != set(g.edges):
        missing = set(g.edges) - set(w)
        extra = set(w) - set(g.edges)
        raise errors.EdgeOutsideSupport(f"w support differs from edge set (missing {sorted(missing)[:3]}, "
                                        f"extra {sorted(extra)[:3]})")
    return EdgeWeightW(w, exact, label)


def uniform_w(g: WeightedGraph) -> EdgeWeightW:
    return make_w({e: 1 for e in g.edges}, g, "uniform")


def tree_exponential_w(g: WeightedGraph) -> EdgeWeightW:
    """``w = (d-1)^k`` on the edge between levels ``k-1`` and ``k`` of a tree ball."""
    if g.levels is None or "d" not in g.params:
        raise errors.MissingLevelMetadata("graph carries no tree-ball level metadata")
    d = g.params["d"]
    vals = {(u, v): (d - 1) ** max(g.levels[u], g.levels[v]) for u, v in g.edges}
    return make_w(vals, g, "tree-exp")


def gamma_length_w(path: Sequence[int], w: EdgeWeightW) -> Number:
    """``|γ|_w``: sum of ``1/w`` over the path's edges."""
    if len(path) < 2:
        raise errors.InvalidPath("path has no edges")
    one = Fraction(1) if w.exact else 1.0
    return sum((one / w(u, v) for u, v in zip(path, path[1:])), one - one)


@dataclass
class Congestion:
    A: Number
    argmax_edge: Edge
    profile: dict[Edge, Number] = field(repr=False)

    @property
    def bound(self) -> Number:
        return 1 / self.A


def congestion_A(g: WeightedGraph, w: EdgeWeightW, paths: PathAssignment) -> Congestion:
    """Worst-edge congestion over all oriented edges.

    A path counts towards ``(u, v)`` only when it traverses ``u -> v``.
    Exact when both ``m`` and ``w`` are rational.
    """
    if paths.graph is not g and paths.graph != g:
        raise errors.InputError("path assignment belongs to a different graph")
    exact = g.exact and w.exact
    zero = Fraction(0) if exact else 0.0
    if exact:
        inv = {e: Fraction(1) / v for e, v in w.values.items()}
    else:
        inv = {e: 1.0 / float(v) for e, v in w.values.items()}
    mv = g.vertex_weight if exact else tuple(float(x) for x in g.vertex_weight)
    load = {e: zero for e in g.oriented_edges()}
    for (x, y), p in paths.items():
        steps = [(u, v) for u, v in zip(p, p[1:])]
        length = sum((inv[(u, v) if u < v else (v, u)] for u, v in steps), zero)
        c = length * mv[x] * mv[y]
        for e in steps:
            load[e] += c
    mtot = g.total_weight if exact else float(g.total_weight)
    profile = {}
    for (u, v), s in load.items():
        key = (u, v) if u < v else (v, u)
        we = w.values[key] if exact else float(w.values[key])
        me = g.weight(u, v) if exact else float(g.weight(u, v))
        profile[(u, v)] = we * s / (mtot * me)
    best = max(profile.values())
    argmax = min(e for e, a in profile.items() if a == best)
    return Congestion(best, argmax, dict(sorted(profile.items())))


def path_method_lower_bound(g: WeightedGraph, w: EdgeWeightW, paths: PathAssignment) -> Number:
    """``1 / A(w)``, a lower bound on the gap against any metric space."""
    return congestion_A(g, w, paths).bound


def default_paths(g: WeightedGraph, strategy: str) -> PathAssignment:
    if strategy == "bfs":
        return bfs_paths(g)
    if strategy == "tree":
        return tree_geodesic_paths(g)
    if strategy == "bitfix":
        return hamming_bitfix_paths(g)
    raise errors.InputError(f"unknown path strategy {strategy!r}")

