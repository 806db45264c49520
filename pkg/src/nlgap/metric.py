"""Finite target metric spaces, point maps and map distortion."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import errors
from .arith import Number, normalize

TRIANGLE_TOL = 1e-9


class FiniteMetricSpace:
    """``k >= 2`` points with a validated distance matrix.

    ``dist`` is always available as a read-only float array.  When every
    entry was rational, ``exact_dist`` holds the matrix as ``Fraction``
    rows and ``exact`` is true.
    """

    __slots__ = ("k", "dist", "exact_dist", "_sq_exact")

    def __init__(self, dist: np.ndarray, exact_dist=None):
        dist = np.array(dist, dtype=float)
        dist.setflags(write=False)
        self.k = dist.shape[0]
        self.dist = dist
        self.exact_dist = exact_dist
        self._sq_exact = None

    @property
    def exact(self) -> bool:
        return self.exact_dist is not None

    def d(self, i: int, j: int) -> Number:
        if self.exact_dist is not None:
            return self.exact_dist[i][j]
        return float(self.dist[i, j])

    def squared(self) -> np.ndarray:
        return self.dist**2

    def squared_exact(self) -> list[list[Fraction]]:
        if self.exact_dist is None:
            raise ValueError("metric is not in exact mode")
        if self._sq_exact is None:
            self._sq_exact = [[x * x for x in row] for row in self.exact_dist]
        return self._sq_exact

    def scaled(self, c: Number) -> "FiniteMetricSpace":
        if self.exact_dist is not None and isinstance(c, (int, Fraction)):
            return validate_metric([[x * c for x in row] for row in self.exact_dist])
        return validate_metric(self.dist * float(c))

    def as_matrix(self) -> list[list[Number]]:
        if self.exact_dist is not None:
            return [list(row) for row in self.exact_dist]
        return self.dist.tolist()

    @classmethod
    def from_integer_matrix(cls, D: np.ndarray) -> "FiniteMetricSpace":
        """Validated exact space from an integer matrix (e.g. hop distances)."""
        D = np.asarray(D, dtype=np.int64)
        _check_shape(D.shape)
        _check_entries_int(D)
        _check_triangle_int(D)
        exact = tuple(tuple(Fraction(int(x)) for x in row) for row in D)
        return cls(D.astype(float), exact)

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"<FiniteMetricSpace k={self.k} {mode}>"


class EuclideanConfig:
    """``k`` points in ``R^m`` (the codomain of candidate embeddings)."""

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise errors.MalformedMatrix("points must be a k x m array with m >= 1")
        if not np.all(np.isfinite(pts)):
            raise errors.MalformedMatrix("non-finite coordinate")
        self.points = pts
        self.k, self.dim = pts.shape

    def distance_matrix(self) -> np.ndarray:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt((diff**2).sum(axis=-1))


def _check_shape(shape) -> None:
    if len(shape) != 2 or shape[0] != shape[1]:
        raise errors.MalformedMatrix(f"distance matrix must be square, got shape {shape}")
    if shape[0] < 2:
        raise errors.MalformedMatrix("metric spaces need at least two points")


def _check_entries_int(D: np.ndarray) -> None:
    k = D.shape[0]
    if np.any(np.diagonal(D) != 0):
        i = int(np.flatnonzero(np.diagonal(D))[0])
        raise errors.NonzeroDiagonal(f"dist[{i}][{i}] = {D[i, i]}")
    bad = np.argwhere(D != D.T)
    if len(bad):
        i, j = map(int, bad[0])
        raise errors.AsymmetricMatrix(f"dist[{i}][{j}] != dist[{j}][{i}]")
    off = D + np.eye(k, dtype=D.dtype) * 1
    bad = np.argwhere(off <= 0)
    if len(bad):
        i, j = map(int, bad[0])
        raise errors.NonpositiveOffDiagonal(f"dist[{i}][{j}] = {D[i, j]} is not positive")


def _triangle_witness(D: np.ndarray, tol) -> tuple[int, int, int] | None:
    for l in range(D.shape[0]):
        via = D[:, l][:, None] + D[l, :][None, :]
        bad = np.argwhere(D > via + tol)
        if len(bad):
            i, j = map(int, bad[0])
            return i, j, l
    return None


def _raise_triangle(D, w) -> None:
    i, j, l = w
    raise errors.TriangleViolation(
        f"dist[{i}][{j}] = {D[i][j]} > dist[{i}][{l}] + dist[{l}][{j}] = "
        f"{D[i][l]} + {D[l][j]}", w)


def _check_triangle_int(D: np.ndarray) -> None:
    w = _triangle_witness(D, 0)
    if w is not None:
        _raise_triangle(D, w)


def validate_metric(matrix, tol: float = TRIANGLE_TOL) -> FiniteMetricSpace:
    """Check a square matrix is a metric on ``k >= 2`` points.

    Rational entries are checked exactly; float entries get ``tol`` of slack
    on symmetry and on the triangle inequality.
    """
    if isinstance(matrix, np.ndarray) and matrix.dtype.kind == "f":
        rows = matrix.tolist()
    else:
        rows = [list(r) for r in matrix]
    k = len(rows)
    _check_shape((k, len(rows[0]) if rows else 0))
    if any(len(r) != k for r in rows):
        raise errors.MalformedMatrix("ragged distance matrix")
    flat, exact = normalize(x for r in rows for x in r)
    if exact:
        F = [flat[i * k:(i + 1) * k] for i in range(k)]
        L = math.lcm(*(x.denominator for x in flat))
        ints = [[int(x * L) for x in r] for r in F]
        if max(max(r) for r in ints) < 2**61:
            D = np.array(ints, dtype=np.int64)
            _check_entries_int(D)
            w = _triangle_witness(D, 0)
            if w is not None:
                _raise_triangle(F, w)
        else:
            _check_entries_exact(F)
        exact_rows = tuple(tuple(r) for r in F)
        return FiniteMetricSpace(np.array([[float(x) for x in r] for r in F]), exact_rows)

    D = np.array(flat, dtype=float).reshape(k, k)
    if not np.all(np.isfinite(D)):
        raise errors.MalformedMatrix("non-finite distance")
    if np.any(np.diagonal(D) != 0):
        i = int(np.flatnonzero(np.diagonal(D))[0])
        raise errors.NonzeroDiagonal(f"dist[{i}][{i}] = {D[i, i]}")
    bad = np.argwhere(np.abs(D - D.T) > tol)
    if len(bad):
        i, j = map(int, bad[0])
        raise errors.AsymmetricMatrix(f"dist[{i}][{j}] != dist[{j}][{i}]")
    bad = np.argwhere(D + np.eye(k) <= 0)
    if len(bad):
        i, j = map(int, bad[0])
        raise errors.NonpositiveOffDiagonal(f"dist[{i}][{j}] = {D[i, j]} is not positive")
    D = (D + D.T) / 2
    w = _triangle_witness(D, tol)
    if w is not None:
        _raise_triangle(D, w)
    return FiniteMetricSpace(D)


def _check_entries_exact(F) -> None:
    # slow path, only for rationals too large for int64 scaling
    k = len(F)
    for i in range(k):
        if F[i][i] != 0:
            raise errors.NonzeroDiagonal(f"dist[{i}][{i}] = {F[i][i]}")
        for j in range(k):
            if F[i][j] != F[j][i]:
                raise errors.AsymmetricMatrix(f"dist[{i}][{j}] != dist[{j}][{i}]")
            if i != j and F[i][j] <= 0:
                raise errors.NonpositiveOffDiagonal(f"dist[{i}][{j}] = {F[i][j]} is not positive")
    for l in range(k):
        for i in range(k):
            for j in range(k):
                if F[i][j] > F[i][l] + F[l][j]:
                    _raise_triangle(F, (i, j, l))


def two_point_space(delta: Number = 1) -> FiniteMetricSpace:
    if not delta > 0:
        raise errors.NonpositiveDelta(f"two-point distance must be positive, got {delta}")
    return validate_metric([[0, delta], [delta, 0]])


def real_points_space(values: Sequence[Number]) -> FiniteMetricSpace:
    """Finite subset of the real line with ``|a - b|`` distances."""
    vals, _ = normalize(values)
    if len(set(vals)) != len(vals):
        raise errors.DuplicateValue("real points must be pairwise distinct")
    return validate_metric([[abs(a - b) for b in vals] for a in vals])


def check_point_map(f: Sequence[int], n: int, k: int) -> tuple[int, ...]:
    """Validate a total vertex -> point assignment."""
    f = tuple(int(p) for p in f)
    if len(f) != n:
        raise errors.InvalidMap(f"map has {len(f)} entries, graph has {n} vertices")
    for x, p in enumerate(f):
        if not 0 <= p < k:
            raise errors.InvalidMap(f"vertex {x} mapped to {p}, outside 0..{k - 1}")
    return f


def distortion_of_map(
    X: FiniteMetricSpace,
    image: Union[EuclideanConfig, FiniteMetricSpace],
    mapping: Sequence[int] | None = None,
) -> float:
    """Distortion of ``i -> mapping[i]`` from ``X`` into ``image``.

    Returns (max expansion) * (max contraction) over distinct pairs, or
    ``inf`` when the map is not injective.  ``mapping`` defaults to the
    identity on indices.
    """
    if mapping is None:
        mapping = range(X.k)
    f = check_point_map(mapping, X.k, image.k)
    if len(set(f)) < X.k:
        return math.inf
    DY = image.distance_matrix() if isinstance(image, EuclideanConfig) else image.dist
    iu, ju = np.triu_indices(X.k, 1)
    fa = np.array(f)
    dy = DY[fa[iu], fa[ju]]
    dx = X.dist[iu, ju]
    if np.any(dy == 0):
        return math.inf
    ratios = dy / dx
    return float(ratios.max() / ratios.min())
