"""Weighted graphs and the generators for the graph families we study."""

from __future__ import annotations

import os
from collections import deque
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import errors
from .arith import Number, normalize

DEFAULT_SIZE_CAP = 2**20


def size_cap() -> int:
    """Global vertex cap for generators (``SGT_SIZE_CAP`` overrides)."""
    env = os.environ.get("SGT_SIZE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise errors.InputError(f"SGT_SIZE_CAP is not an integer: {env!r}") from None
    return DEFAULT_SIZE_CAP


def _check_cap(n: int) -> None:
    cap = size_cap()
    if n > cap:
        raise errors.SizeCapExceeded(f"{n} vertices exceeds size cap {cap}")


class WeightedGraph:
    """Simple connected graph with a symmetric positive edge weight.

    Build instances with :func:`build_graph` or a generator; the object is
    treated as immutable afterwards.

    Attributes
    ----------
    n : vertex count
    edges : sorted tuple of ``(u, v)`` with ``u < v``
    weights : edge weights, parallel to ``edges`` (``Fraction`` in exact mode)
    vertex_weight : ``m(x)``, the sum of weights of edges at ``x``
    total_weight : ``m(∅) = Σ_x m(x)``
    levels : distance from the center for tree balls, else ``None``
    """

    __slots__ = (
        "n", "edges", "weights", "exact", "vertex_weight", "total_weight",
        "neighbors", "levels", "family", "params", "_lookup",
    )

    def __init__(self, n, edges, weights, exact, levels=None, family=None, params=None):
        self.n = n
        self.edges = edges
        self.weights = weights
        self.exact = exact
        self.levels = levels
        self.family = family
        self.params = dict(params or {})
        self._lookup = dict(zip(edges, weights))
        zero = Fraction(0) if exact else 0.0
        vw = [zero] * n
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for (u, v), w in zip(edges, weights):
            vw[u] += w
            vw[v] += w
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.vertex_weight = tuple(vw)
        self.total_weight = sum(vw, zero)
        self.neighbors = tuple(tuple(sorted(a)) for a in nbrs)

    def weight(self, u: int, v: int) -> Number:
        """``m(u, v)``; zero off the edge set."""
        key = (u, v) if u < v else (v, u)
        return self._lookup.get(key, Fraction(0) if self.exact else 0.0)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._lookup

    def oriented_edges(self) -> Iterator[tuple[int, int]]:
        """Both orientations of every edge."""
        for u, v in self.edges:
            yield (u, v)
            yield (v, u)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, x: int) -> int:
        return len(self.neighbors[x])

    def weight_matrix(self) -> np.ndarray:
        M = np.zeros((self.n, self.n))
        for (u, v), w in zip(self.edges, self.weights):
            M[u, v] = M[v, u] = float(w)
        return M

    def scaled(self, c: Number) -> "WeightedGraph":
        """Same graph with every edge weight multiplied by ``c``."""
        return build_graph(
            self.n, [(u, v, w * c) for (u, v), w in zip(self.edges, self.weights)],
            levels=self.levels, family=self.family, params=self.params,
        )

    def is_tree(self) -> bool:
        return self.num_edges == self.n - 1

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self._lookup == other._lookup

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        tag = self.family or "graph"
        return f"<WeightedGraph {tag} n={self.n} edges={self.num_edges}>"


def build_graph(
    n: int,
    weighted_edges: Sequence[tuple[int, int, Number]],
    *,
    levels: Sequence[int] | None = None,
    family: str | None = None,
    params: dict | None = None,
) -> WeightedGraph:
    """Validate ``(u, v, weight)`` triples and return a :class:`WeightedGraph`."""
    if n < 2:
        raise errors.RejectTooSmall(f"graphs need at least 2 vertices, got {n}")
    seen = set()
    pairs = []
    for u, v, _ in weighted_edges:
        if not (0 <= u < n and 0 <= v < n):
            raise errors.VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise errors.RejectLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise errors.RejectDuplicateEdge(f"duplicate edge {key}")
        seen.add(key)
        pairs.append(key)
    weights, exact = normalize(w for _, _, w in weighted_edges)
    for key, w in zip(pairs, weights):
        if not w > 0:
            raise errors.RejectNonpositiveWeight(f"edge {key} has weight {w}")
    order = sorted(range(len(pairs)), key=pairs.__getitem__)
    edges = tuple(pairs[i] for i in order)
    weights = tuple(weights[i] for i in order)
    g = WeightedGraph(
        n, edges, weights, exact,
        levels=tuple(levels) if levels is not None else None,
        family=family, params=params,
    )
    if len(bfs_distances(g, 0)) != n:
        raise errors.RejectDisconnected(f"graph on {n} vertices is not connected")
    return g


def bfs_distances(g: WeightedGraph, source: int) -> dict[int, int]:
    """Hop distances from ``source`` to every reachable vertex."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_pairs_hops(g: WeightedGraph) -> np.ndarray:
    """``n x n`` integer matrix of hop distances (one BFS per vertex)."""
    D = np.zeros((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        for t, d in bfs_distances(g, s).items():
            D[s, t] = d
    return D


# generators ---------------------------------------------------------------

def _uniform(n, pairs, **kw) -> WeightedGraph:
    return build_graph(n, [(u, v, 1) for u, v in pairs], **kw)


def gen_hamming(n: int) -> WeightedGraph:
    """The ``n``-cube; vertex ``x`` is the bitstring with integer value ``x``."""
    if n < 1:
        raise errors.RejectTooSmall("Hamming cube dimension must be >= 1")
    if n >= 63:
        raise errors.SizeCapExceeded(f"2^{n} vertices exceeds size cap {size_cap()}")
    N = 1 << n
    _check_cap(N)
    pairs = [(x, x ^ (1 << i)) for x in range(N) for i in range(n) if x < x ^ (1 << i)]
    return _uniform(N, pairs, family="hamming", params={"n": n})


def tree_ball_size(d: int, r: int) -> int:
    return 1 + sum(d * (d - 1) ** (l - 1) for l in range(1, r + 1))


def gen_tree_ball(d: int, r: int) -> WeightedGraph:
    """Radius-``r`` ball in the ``d``-regular tree, labelled in level order.

    Vertex 0 is the center; ``graph.levels[x]`` is the distance from it.
    """
    if d < 2:
        raise errors.InputError(f"tree degree must be >= 2, got {d}")
    if r < 1:
        raise errors.RejectTooSmall("a radius-0 ball is a single vertex")
    _check_cap(tree_ball_size(d, r))
    levels = [0]
    pairs = []
    frontier = [0]
    for depth in range(1, r + 1):
        nxt = []
        for parent in frontier:
            for _ in range(d if parent == 0 else d - 1):
                child = len(levels)
                levels.append(depth)
                pairs.append((parent, child))
                nxt.append(child)
        frontier = nxt
    return _uniform(len(levels), pairs, levels=levels, family="tree", params={"d": d, "r": r})


def gen_path(n: int) -> WeightedGraph:
    """Path with ``n`` edges on vertices ``0..n`` in chain order."""
    if n < 1:
        raise errors.RejectTooSmall("path needs at least one edge")
    _check_cap(n + 1)
    return _uniform(n + 1, [(i, i + 1) for i in range(n)], family="path", params={"n": n})


def gen_cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise errors.RejectTooSmall("cycle needs at least 3 vertices")
    _check_cap(n)
    return _uniform(n, [(i, (i + 1) % n) for i in range(n)], family="cycle", params={"n": n})


def gen_complete(n: int) -> WeightedGraph:
    if n < 2:
        raise errors.RejectTooSmall("complete graph needs at least 2 vertices")
    _check_cap(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return _uniform(n, pairs, family="complete", params={"n": n})


def gen_random_regular(n: int, d: int, seed: int, max_tries: int = 1000) -> WeightedGraph:
    """Connected simple ``d``-regular graph from the pairing (configuration) model.

    Outcomes with loops, multi-edges or more than one component are rejected
    and redrawn; ``max_tries`` bounds the number of draws.
    """
    if (n * d) % 2 or not 0 < d < n:
        raise errors.InputError(f"need n*d even and 0 < d < n, got n={n}, d={d}")
    _check_cap(n)
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        perm = rng.permutation(stubs).reshape(-1, 2)
        pairs = {(int(min(a, b)), int(max(a, b))) for a, b in perm}
        if len(pairs) != len(perm) or any(u == v for u, v in pairs):
            continue
        try:
            return _uniform(n, sorted(pairs), family="random-regular",
                            params={"n": n, "d": d, "seed": seed})
        except errors.RejectDisconnected:
            continue
    raise errors.PairingFailed(f"no simple connected {d}-regular graph on {n} vertices "
                               f"after {max_tries} tries")


def graph_metric_space(g: WeightedGraph):
    """The hop metric of ``g`` as a finite metric space on its vertices."""
    from .metric import FiniteMetricSpace

    return FiniteMetricSpace.from_integer_matrix(all_pairs_hops(g))


def relabel(g: WeightedGraph, perm: Sequence[int]) -> WeightedGraph:
    """Copy of ``g`` with vertex ``x`` renamed ``perm[x]``."""
    return build_graph(g.n, [(perm[u], perm[v], w) for (u, v), w in zip(g.edges, g.weights)])
