"""Poincaré quotients and the nonlinear spectral gap of a graph against a finite metric.

For a map ``f: V -> X`` the quotient is::

    Σ_{x,y} m(x,y) d(fx, fy)^2  /  ( (1/m(∅)) Σ_{x,y} m(x) m(y) d(fx, fy)^2 )

summed over ordered pairs.  The gap is its minimum over non-constant maps.
Both sums are evaluated through per-point masses ``M_p = Σ_{fx=p} m(x)``,
which turns the denominator into ``M^T D² M / m(∅)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import errors
from .arith import Number
from .graph import WeightedGraph, graph_metric_space
from .metric import FiniteMetricSpace, check_point_map, two_point_space

DEFAULT_CAP = 10**7
CHUNK = 1 << 15
# relative slack for float screening before the exact re-check
SCREEN_TOL = 1e-9
DEFAULT_RESTARTS = 20


@dataclass(frozen=True)
class QuotientValue:
    numerator: Number
    denominator: Number

    @property
    def ratio(self) -> Number:
        return self.numerator / self.denominator


@dataclass
class GapResult:
    value: Number
    witness: tuple[int, ...]
    method: str
    numerator: Number
    denominator: Number
    certificates: dict = field(default_factory=dict)


def poincare_quotient(g: WeightedGraph, X: FiniteMetricSpace, f: Sequence[int]) -> QuotientValue:
    """Quotient of ``f``; exact (``Fraction``) when ``g`` and ``X`` are rational.

    Raises :class:`ConstantMap` when ``f`` hits a single point.
    """
    f = check_point_map(f, g.n, X.k)
    if len(set(f)) < 2:
        raise errors.ConstantMap("constant map has zero denominator")
    if g.exact and X.exact:
        D2 = X.squared_exact()
        weights, mv, mtot = g.weights, g.vertex_weight, g.total_weight
        zero = Fraction(0)
    else:
        D2 = X.squared().tolist()
        weights = [float(w) for w in g.weights]
        mv = [float(x) for x in g.vertex_weight]
        mtot = float(g.total_weight)
        zero = 0.0
    num = zero
    for (u, v), w in zip(g.edges, weights):
        num += w * D2[f[u]][f[v]]
    num *= 2
    mass = [zero] * X.k
    for x, mx in enumerate(mv):
        mass[f[x]] += mx
    used = [p for p in range(X.k) if mass[p]]
    den = zero
    for p in used:
        row = D2[p]
        den += mass[p] * sum((mass[q] * row[q] for q in used), zero)
    den /= mtot
    return QuotientValue(num, den)


def identity_upper_bound(g: WeightedGraph) -> Number:
    """Quotient of the identity map into the graph's own hop metric."""
    return poincare_quotient(g, graph_metric_space(g), range(g.n)).ratio


def cut_quotient(g: WeightedGraph, S, delta: Number = 1) -> Number:
    """Quotient of the indicator of ``S`` into a two-point space (independent of ``delta``)."""
    S = set(S)
    if not S or len(S) >= g.n or not S <= set(range(g.n)):
        raise errors.EmptyOrFullSubset("subset must be proper and nonempty")
    f = [1 if x in S else 0 for x in range(g.n)]
    return poincare_quotient(g, two_point_space(delta), f).ratio


def center_edge_component(g: WeightedGraph) -> set[int]:
    """Vertices of a tree ball on the far side of the center edge ``{0, 1}``."""
    if g.levels is None:
        raise errors.MissingLevelMetadata("graph carries no tree-ball level metadata")
    side = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for v in g.neighbors[u]:
            if v != 0 and v not in side:
                side.add(v)
                stack.append(v)
    return side


# exhaustive search --------------------------------------------------------

class _Evaluator:
    """Vectorised float quotients for blocks of maps in mixed-radix order."""

    def __init__(self, g: WeightedGraph, X: FiniteMetricSpace):
        self.n, self.k = g.n, X.k
        self.D2 = X.squared()
        self.eu = np.array([u for u, _ in g.edges])
        self.ev = np.array([v for _, v in g.edges])
        self.ew = 2.0 * np.array([float(w) for w in g.weights])
        self.mv = np.array([float(x) for x in g.vertex_weight])
        self.mtot = float(g.total_weight)
        # vertex 0 is the most significant digit
        self.place = self.k ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    def maps(self, lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi, dtype=np.int64)
        return (idx[:, None] // self.place[None, :]) % self.k

    def ratios(self, F: np.ndarray) -> np.ndarray:
        num = (self.ew[None, :] * self.D2[F[:, self.eu], F[:, self.ev]]).sum(axis=1)
        M = np.zeros((F.shape[0], self.k))
        rows = np.arange(F.shape[0])
        for x in range(self.n):
            M[rows, F[:, x]] += self.mv[x]
        den = np.einsum("bp,pq,bq->b", M, self.D2, M) / self.mtot
        out = np.full(F.shape[0], np.inf)
        nonconst = (F != F[:, :1]).any(axis=1)
        out[nonconst] = num[nonconst] / den[nonconst]
        return out

    def block(self, lo: int, hi: int, tol: float):
        """Return (block minimum, candidate indices within ``tol`` of it)."""
        r = self.ratios(self.maps(lo, hi))
        best = r.min()
        if not np.isfinite(best):
            return np.inf, np.empty(0, dtype=np.int64)
        cand = np.flatnonzero(r <= best * (1 + tol)) + lo
        return float(best), cand


def gap_exact(
    g: WeightedGraph,
    X: FiniteMetricSpace,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> GapResult:
    """Minimum quotient over all non-constant maps (exhaustive).

    Maps are enumerated in mixed-radix order with vertex 0 most significant;
    the witness is the first minimiser in that order.  In exact mode a float
    screen selects near-minimal candidates which are then compared exactly.
    Blocks may be evaluated by ``workers`` threads; the result does not
    depend on the thread count.
    """
    total = X.k ** g.n
    if total > cap:
        raise errors.SearchSpaceTooLarge(f"{X.k}^{g.n} = {total} maps exceeds cap {cap}")
    ev = _Evaluator(g, X)
    exact = g.exact and X.exact
    tol = SCREEN_TOL if exact else 1e-12
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: ev.block(*b, tol), bounds))
    else:
        parts = [ev.block(lo, hi, tol) for lo, hi in bounds]
    best = min(p[0] for p in parts)
    cand = np.concatenate([c for v, c in parts if v <= best * (1 + tol)])
    if exact:
        best_q = None
        for i in cand:
            q = poincare_quotient(g, X, (int(i) // ev.place) % X.k)
            if best_q is None or q.ratio < best_q.ratio:
                best_q, witness_idx = q, int(i)
    else:
        # cand is sorted by enumeration index
        r = ev.ratios((cand[:, None] // ev.place[None, :]) % X.k)
        witness_idx = int(cand[np.argmax(r <= r.min() * (1 + tol))])
    witness = tuple(int(p) for p in (witness_idx // ev.place) % X.k)
    q = poincare_quotient(g, X, witness)
    return GapResult(q.ratio, witness, "exhaustive", q.numerator, q.denominator,
                     {"maps_examined": total, "candidates_rechecked": int(len(cand))})


# local search -------------------------------------------------------------

def _subseed(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, restart]))


def _descend(g, f, max_sweeps, nbrs, D2, mv, mtot) -> int:
    """Coordinate descent from ``f`` (modified in place); returns sweeps used."""
    k = D2.shape[0]
    eu = np.array([u for u, _ in g.edges])
    ev = np.array([v for _, v in g.edges])
    ew = 2.0 * np.array([float(w) for w in g.weights])
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        # refresh from scratch each sweep so rounding cannot accumulate
        M = np.bincount(f, weights=mv, minlength=k)
        num = float((ew * D2[f[eu], f[ev]]).sum())
        changed = False
        for x, (idx, w) in enumerate(nbrs):
            p = f[x]
            fn = f[idx]
            rest = M.copy()
            rest[p] -= mv[x]
            num_q = num - 2 * float(w @ D2[p, fn]) + 2 * (D2[:, fn] @ w)
            den_q = (rest @ D2 @ rest + 2 * mv[x] * (D2 @ rest)) / mtot
            with np.errstate(divide="ignore", invalid="ignore"):
                r = num_q / den_q
            support = np.flatnonzero(rest > 0)
            if len(support) == 1:
                # moving x onto the only other occupied point makes f constant
                r[support[0]] = np.inf
            r[~np.isfinite(r)] = np.inf
            q = int(np.argmin(r))
            if q != p and r[q] < r[p] * (1 - 1e-12):
                f[x] = q
                rest[q] += mv[x]
                M = rest
                num = float(num_q[q])
                changed = True
        if not changed:
            break
    return sweeps


def gap_search(
    g: WeightedGraph,
    X: FiniteMetricSpace,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_sweeps: int = 100,
) -> GapResult:
    """Best local minimum over ``restarts`` coordinate-descent runs (an upper bound).

    Each run starts from a random non-constant map and sweeps vertices in
    index order, moving a vertex to the point that most lowers the quotient
    (ties to the smallest point index); a sweep without moves ends the run.
    Restart ``r`` draws from ``SeedSequence([seed, r])``, so results depend
    only on the arguments.
    """
    if restarts < 1:
        raise errors.InputError("restarts must be >= 1")
    n, k = g.n, X.k
    D2 = X.squared()
    mv = np.array([float(x) for x in g.vertex_weight])
    mtot = float(g.total_weight)
    nbrs = [(np.array(g.neighbors[x], dtype=np.int64),
             np.array([float(g.weight(x, y)) for y in g.neighbors[x]])) for x in range(n)]
    best = None
    total_sweeps = 0
    for r in range(restarts):
        rng = _subseed(seed, r)
        f = rng.integers(0, k, size=n)
        while len(set(f.tolist())) < 2:
            f = rng.integers(0, k, size=n)
        total_sweeps += _descend(g, f, max_sweeps, nbrs, D2, mv, mtot)
        q = poincare_quotient(g, X, f.tolist())
        if best is None or q.ratio < best[0].ratio:
            best = (q, tuple(int(p) for p in f))
    q, witness = best
    return GapResult(q.ratio, witness, "local_search", q.numerator, q.denominator,
                     {"seed": seed, "restarts": restarts, "max_sweeps": max_sweeps,
                      "sweeps": total_sweeps})
