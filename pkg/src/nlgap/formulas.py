"""Closed-form bounds and values, evaluated exactly where they are rational."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import errors
from .arith import Number
from .graph import WeightedGraph
from .metric import FiniteMetricSpace, check_point_map


@dataclass(frozen=True)
class ClosedFormValue:
    formula_id: str
    parameters: dict
    value: Number


def hamming_identity_value(n: int) -> Fraction:
    """Identity-map quotient of the n-cube into its own Hamming metric: 4/(n(n+1))."""
    if n < 1:
        raise errors.DomainError("n must be >= 1")
    return Fraction(4, n * (n + 1))


def _tree_domain(d: int, r: int) -> None:
    if d < 3 or r < 1:
        raise errors.DomainError(f"tree-ball closed forms need d >= 3 and r >= 1, got d={d}, r={r}")


def tree_lower_bound(d: int, r: int) -> Fraction:
    """Uniform lower bound on the gap of the tree ball ``T_{d,r}``.

    ``(d-2)/(d²(d-1)) * ((d-1)^r - 1)/(d-1)^r * (d-1)^{-r}``
    """
    _tree_domain(d, r)
    b = (d - 1) ** r
    return Fraction(d - 2, d * d * (d - 1)) * Fraction(b - 1, b) / b


def tree_cut_upper_bound(d: int, r: int) -> Fraction:
    """Quotient of the center-edge cut of ``T_{d,r}``, an upper bound for every target."""
    _tree_domain(d, r)
    a = (d - 1) ** (r - 1)
    b = (d - 1) ** r
    bracket = (Fraction(d * (a - 1), d - 2)
               + a
               + Fraction((a - 1) * b, b - 1)
               + Fraction((d - 2) * (d - 1) ** (2 * r - 1), d * (b - 1)))
    return 2 / bracket


def pn_mu1(n: int) -> float:
    """First positive eigenvalue of the uniform path with ``n`` edges: 1 - cos(π/n)."""
    if n < 2:
        raise errors.DomainError("n must be >= 2")
    return 1 - math.cos(math.pi / n)


def distortion_lower_bound(mu1: Number, distortion: float) -> float:
    """``mu1 / D²``: gap lower bound from any Euclidean embedding of distortion ``D``.

    Valid for every ``D`` at least the worst distortion of the target's
    subsets of at most |V| points.
    """
    if distortion < 1:
        raise errors.DistortionBelowOne(f"distortion {distortion} < 1")
    return float(mu1) / float(distortion) ** 2


def bourgain_ratio_bound(n: int) -> float:
    """``1/(log n)²``: shape-only reference curve for gap/μ₁, universal constant unknown."""
    if n < 2:
        raise errors.DomainError("n must be >= 2")
    return 1 / math.log(n) ** 2


def rearrangement_phi(g: WeightedGraph, X: FiniteMetricSpace, f: Sequence[int]) -> list[Number]:
    """Cumulative image distances along a path graph: ``φ(v_i) = Σ_{l<=i} d(f v_{l-1}, f v_l)``."""
    if g.edges != tuple((i, i + 1) for i in range(g.n - 1)):
        raise errors.NotAPathGraph("graph is not a path in chain order")
    f = check_point_map(f, g.n, X.k)
    phi = [Fraction(0) if X.exact else 0.0]
    for a, b in zip(f, f[1:]):
        phi.append(phi[-1] + X.d(a, b))
    return phi


FORMULAS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "hamming-identity": (hamming_identity_value, ("n",)),
    "tree-lower": (tree_lower_bound, ("d", "r")),
    "tree-upper": (tree_cut_upper_bound, ("d", "r")),
    "path-mu1": (pn_mu1, ("n",)),
    "distortion-lower": (distortion_lower_bound, ("mu1", "distortion")),
    "bourgain-ratio": (bourgain_ratio_bound, ("n",)),
}


def evaluate(name: str, params: dict) -> ClosedFormValue:
    """Evaluate a named closed form with keyword parameters."""
    try:
        fn, names = FORMULAS[name]
    except KeyError:
        raise errors.InputError(f"unknown formula {name!r}; choose from {sorted(FORMULAS)}") from None
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise errors.InputError(f"{name} takes parameters {names}, got {sorted(params)}")
    return ClosedFormValue(name, {p: params[p] for p in names}, fn(*(params[p] for p in names)))
