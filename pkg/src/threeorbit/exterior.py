"""The exterior square of F_p^n in explicit coordinates.

Basis vectors e_i ^ e_j (i < j) are indexed lexicographically, 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, Singular
from .fplinalg import Subspace, charpoly, poly_squarefree, rank


@dataclass(frozen=True)
class ExtSquare:
    n: int
    p: int

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {ij: k for k, ij in enumerate(self.pairs)}

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2

    def wedge(self, u, v) -> np.ndarray:
        return wedge(u, v, self.p)

    def induced_map(self, g) -> np.ndarray:
        return induced_map(g, self.p)


def pair_index(i: int, j: int, n: int) -> int:
    """Position of e_i ^ e_j (0 <= i < j < n)."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def _pair_arrays(n: int):
    iu = np.triu_indices(n, k=1)
    return iu[0], iu[1]


def wedge(u, v, p: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatch("wedge needs two vectors of equal length")
    a, b = _pair_arrays(len(u))
    return (u[a] * v[b] - u[b] * v[a]) % p


def induced_map(g, p: int) -> np.ndarray:
    """Matrix of Lambda^2(g) on the pair basis."""
    g = np.asarray(g, dtype=np.int64) % p
    n = g.shape[0]
    if g.shape != (n, n):
        raise DimensionMismatch("induced_map needs a square matrix")
    if rank(g, p) < n:
        raise Singular("induced_map of a singular matrix")
    a, b = _pair_arrays(n)
    # entry [(a,b),(i,j)] = g[a,i] g[b,j] - g[b,i] g[a,j]
    out = g[a][:, a] * g[b][:, b] - g[b][:, a] * g[a][:, b]
    return out % p


def submodule_closure(seed: Subspace, gens, p: int | None = None) -> Subspace:
    """Smallest subspace containing ``seed`` and invariant under Lambda^2(g)."""
    p = seed.p if p is None else p
    mats = [induced_map(g, p) for g in gens]
    basis = [row for row in seed.matrix]
    cur = seed
    queue = list(basis)
    while queue:
        v = queue.pop()
        for L in mats:
            w = (L @ v) % p
            if not cur.contains(w):
                cur = Subspace.from_gens(np.vstack([cur.matrix, w]), cur.n, p)
                queue.append(w)
    return cur


def singer_multiplicity_free_check(ctx) -> bool:
    """Squarefree characteristic polynomial of Lambda^2 of a Singer cycle.

    The Singer cycle has order p^n - 1, coprime to p, so it acts
    semisimply and squarefreeness is equivalent to multiplicity-freeness.
    """
    S = ctx.mul_matrix(ctx.lam)
    if ctx.n < 2:
        return True
    L = induced_map(S, ctx.p)
    return poly_squarefree(charpoly(L, ctx.p), ctx.p)
