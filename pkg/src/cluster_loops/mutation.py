"""Seed mutation with principal coefficients, used as an independent oracle.

The extended exchange matrix has ``2n`` rows: the top ``n x n`` block is the
skew-symmetric exchange matrix, the bottom block records coefficient
exponents and starts as the identity.  Every division in an exchange relation
goes through :func:`~cluster_loops.laurent.exact_divide`, so a non-Laurent
intermediate raises instead of being silently carried along.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .expansion import xvar, yvar
from .laurent import LaurentPolynomial, Monomial, exact_divide
from .surface import CombinatorialTriangulation, adjacency_matrix


def mutate_matrix(B: np.ndarray, k: int) -> np.ndarray:
    """Matrix mutation in direction ``k`` (0-based); works for extended matrices."""
    B = np.asarray(B, dtype=np.int64)
    out = B.copy()
    rows, cols = B.shape
    for j in range(rows):
        for l in range(cols):
            if j == k or l == k:
                out[j, l] = -B[j, l]
            else:
                out[j, l] = B[j, l] + max(0, -B[j, k]) * B[k, l] + max(0, B[k, l]) * B[j, k]
    return out


def mutate_matrix_standard(B: np.ndarray, k: int) -> np.ndarray:
    """Textbook form ``b_jl + (|b_jk| b_kl + b_jk |b_kl|) / 2``; kept as a cross-check."""
    B = np.asarray(B, dtype=np.int64)
    out = B + (np.abs(B[:, [k]]) * B[[k], :] + B[:, [k]] * np.abs(B[[k], :])) // 2
    out[k, :] = -B[k, :]
    out[:, k] = -B[:, k]
    return out


@dataclass(frozen=True)
class Seed:
    """Cluster, extended exchange matrix and the labels of the initial arcs."""

    cluster: tuple[LaurentPolynomial, ...]
    matrix: tuple[tuple[int, ...], ...]      # 2n rows, n columns
    labels: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.cluster)

    @property
    def B(self) -> np.ndarray:
        return np.array(self.matrix[: self.n], dtype=np.int64).reshape(self.n, self.n)

    @property
    def C(self) -> np.ndarray:
        return np.array(self.matrix[self.n:], dtype=np.int64).reshape(self.n, self.n)

    def extended(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(2 * self.n, self.n)

    def mutate(self, k: int) -> "Seed":
        """Mutate at position ``k`` (0-based)."""
        n = self.n
        if not 0 <= k < n:
            raise IndexError(f"mutation direction {k} out of range 0..{n - 1}")
        M = self.extended()
        pos, neg = Monomial(), Monomial()
        xs_pos = LaurentPolynomial.constant(1)
        xs_neg = LaurentPolynomial.constant(1)
        for i in range(n):
            b = int(M[i, k])
            if b > 0:
                xs_pos = xs_pos * self.cluster[i] ** b
            elif b < 0:
                xs_neg = xs_neg * self.cluster[i] ** (-b)
        for j in range(n):
            c = int(M[n + j, k])
            if c > 0:
                pos = pos * Monomial.var(yvar(self.labels[j]), c)
            elif c < 0:
                neg = neg * Monomial.var(yvar(self.labels[j]), -c)
        num = xs_pos * LaurentPolynomial.from_monomial(pos) + xs_neg * LaurentPolynomial.from_monomial(neg)
        new_x = exact_divide(num, self.cluster[k])
        cluster = list(self.cluster)
        cluster[k] = new_x
        M2 = mutate_matrix(M, k)
        return Seed(tuple(cluster), tuple(tuple(int(v) for v in row) for row in M2), self.labels)


def initial_seed(labels: Sequence[str], B: np.ndarray) -> Seed:
    n = len(labels)
    B = np.asarray(B, dtype=np.int64)
    if B.shape != (n, n) or not np.array_equal(B, -B.T):
        raise ValueError("exchange matrix must be square and skew-symmetric")
    M = np.vstack([B, np.eye(n, dtype=np.int64)])
    cluster = tuple(LaurentPolynomial.var(xvar(lab)) for lab in labels)
    return Seed(cluster, tuple(tuple(int(v) for v in row) for row in M), tuple(labels))


def seed_from_triangulation(t: CombinatorialTriangulation) -> Seed:
    """Initial seed with principal coefficients; boundary segments are not mutable."""
    return initial_seed(t.arcs, adjacency_matrix(t))


def variable_by_flips(
    t: CombinatorialTriangulation, flips: Sequence[str | int], position: str | int
) -> LaurentPolynomial:
    """Cluster variable at ``position`` after mutating along ``flips``.

    Flips and the position may be arc labels or 1-based indices into ``t.arcs``.
    """
    seed = seed_from_triangulation(t)
    for f in flips:
        seed = seed.mutate(_index(t, f))
    return seed.cluster[_index(t, position)]


def _index(t: CombinatorialTriangulation, ref: str | int) -> int:
    if isinstance(ref, str) and ref in t.arcs:
        return t.arcs.index(ref)
    try:
        i = int(ref)
    except (TypeError, ValueError):
        raise KeyError(f"unknown arc {ref!r}") from None
    if not 1 <= i <= t.n:
        raise KeyError(f"arc index {i} out of range 1..{t.n}")
    return i - 1
