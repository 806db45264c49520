"""Spectrum of the random-walk Laplacian ``Δf(x) = f(x) - Σ_y m(x,y)/m(x) f(y)``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .graph import WeightedGraph

ZERO_TOL = 1e-9
DENSE_CAP = 4096


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    mu1: float


def normalized_laplacian(g: WeightedGraph) -> np.ndarray:
    """``I - D^{-1/2} M D^{-1/2}``, symmetric and similar to Δ."""
    M = g.weight_matrix()
    s = 1.0 / np.sqrt(np.array([float(x) for x in g.vertex_weight]))
    return np.eye(g.n) - s[:, None] * M * s[None, :]


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm drops below ``tol``.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(A[offdiag] ** 2)) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta  # theta^2 would overflow
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1))
                else:
                    t = 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
    else:
        raise errors.DegenerateSpectrum(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.diagonal(A))


def laplacian_spectrum(g: WeightedGraph, solver: str = "eigh", max_n: int = DENSE_CAP) -> Spectrum:
    """Full spectrum of Δ (dense) and its first positive eigenvalue.

    ``solver`` is ``"eigh"`` (LAPACK) or ``"jacobi"``.
    """
    if g.n > max_n:
        raise errors.SizeCapExceeded(f"dense eigensolver capped at {max_n} vertices, got {g.n}")
    L = normalized_laplacian(g)
    if solver == "eigh":
        vals = np.linalg.eigvalsh(L)
    elif solver == "jacobi":
        vals = jacobi_eigenvalues(L)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    vals = np.sort(vals)
    positive = vals[vals > ZERO_TOL]
    if len(positive) == 0:
        raise errors.DegenerateSpectrum("no eigenvalue above the zero tolerance")
    return Spectrum(tuple(float(v) for v in vals), float(positive[0]))


def mu1(g: WeightedGraph) -> float:
    """First positive eigenvalue of Δ; equals the nonlinear gap against the real line."""
    return laplacian_spectrum(g).mu1


def mu1_eigenvector(g: WeightedGraph) -> np.ndarray:
    """A real function on vertices with ``Δf = μ₁ f`` (used by test oracles)."""
    vals, vecs = np.linalg.eigh(normalized_laplacian(g))
    i = int(np.argmax(vals > ZERO_TOL))
    s = 1.0 / np.sqrt(np.array([float(x) for x in g.vertex_weight]))
    return s * vecs[:, i]
