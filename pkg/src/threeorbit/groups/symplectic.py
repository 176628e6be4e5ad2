"""Canonical form of special groups with a one-dimensional centre (odd p)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateForm, EvenCharacteristic, OddDimension, PreconditionFailed
from ..fplinalg import mat_inv
from .cocycle import CocycleGroup


def standard_beta(k: int, p: int) -> np.ndarray:
    """beta((a,b),(c,d)) = sum a_i d_i on F_p^{2k} with coordinates (a_1..a_k, b_1..b_k)."""
    beta = np.zeros((2 * k, 2 * k, 1), dtype=np.int64)
    for i in range(k):
        beta[i, k + i, 0] = 1
    return beta


def hyperbolic_basis(C, p: int) -> np.ndarray:
    """Columns (e_1..e_k, f_1..f_k) with C(e_i, f_j) = delta_ij and the rest zero.

    ``C`` is the Gram matrix of a nondegenerate alternating form.
    """
    C = np.asarray(C, dtype=np.int64) % p
    n = C.shape[0]
    form = lambda u, v: int(u @ C @ v) % p  # noqa: E731
    pool = [row for row in np.eye(n, dtype=np.int64)]
    es, fs = [], []
    while pool:
        e = pool.pop(0)
        if not e.any():
            continue
        j = next((j for j, v in enumerate(pool) if form(e, v)), None)
        if j is None:
            raise DegenerateForm("commutator form is degenerate")
        f = pool.pop(j)
        f = (f * pow(form(e, f), -1, p)) % p
        es.append(e)
        fs.append(f)
        # v - c(v,f) e + c(v,e) f is orthogonal to both e and f
        pool = [(v - form(v, f) * e + form(v, e) * f) % p for v in pool]
    return np.array(es + fs, dtype=np.int64).T


@dataclass
class Standardization:
    """Isomorphism N -> canonical group (v, z) -> (T^-1 v, z - q_N(v) + q_can(T^-1 v))."""

    transform: np.ndarray
    canonical: CocycleGroup
    source: CocycleGroup

    def __post_init__(self):
        self.inverse = mat_inv(self.transform, self.source.p)
        self.half = pow(2, -1, self.source.p)

    def _q(self, N: CocycleGroup, V) -> np.ndarray:
        return (self.half * N.square_map(V)) % N.p

    def forward(self, X) -> np.ndarray:
        """Rows (v | z) of the source mapped to rows of the canonical group."""
        N, p = self.source, self.source.p
        X = np.asarray(X, dtype=np.int64)
        V, Z = X[..., : N.n], X[..., N.n:]
        W = (V @ self.inverse.T) % p
        Z2 = (Z - self._q(N, V) + self._q(self.canonical, W)) % p
        return np.concatenate([W, Z2], axis=-1)

    def backward(self, Y) -> np.ndarray:
        N, p = self.source, self.source.p
        Y = np.asarray(Y, dtype=np.int64)
        W, Z = Y[..., : N.n], Y[..., N.n:]
        V = (W @ self.transform.T) % p
        Z2 = (Z - self._q(self.canonical, W) + self._q(N, V)) % p
        return np.concatenate([V, Z2], axis=-1)

    def verify(self, samples: int = 1000, seed: int = 0) -> bool:
        """Multiplicativity of ``forward`` and round trip on random pairs."""
        N, C = self.source, self.canonical
        rng = np.random.default_rng(seed)
        X = rng.integers(0, N.p, (samples, N.n + N.m))
        Y = rng.integers(0, N.p, (samples, N.n + N.m))
        lhs = self.forward(N.mul_rows(X, Y))
        rhs = C.mul_rows(self.forward(X), self.forward(Y))
        return bool(np.array_equal(lhs, rhs) and np.array_equal(self.backward(self.forward(X)), X))


def symplectic_standardize(N: CocycleGroup) -> tuple[np.ndarray, CocycleGroup]:
    """Return (T, canonical) where T's columns are a hyperbolic basis of V."""
    s = standardization(N)
    return s.transform, s.canonical


def standardization(N: CocycleGroup) -> Standardization:
    if N.p == 2:
        raise EvenCharacteristic("standardization needs odd characteristic")
    if N.m != 1:
        raise PreconditionFailed("standardization needs a one-dimensional centre")
    if N.n % 2:
        raise OddDimension("V has odd dimension")
    T = hyperbolic_basis(N.comm_tensor[:, :, 0], N.p)
    k = N.n // 2
    canonical = CocycleGroup(N.p, N.n, 1, standard_beta(k, N.p), {
        "name": "extraspecial_q", "params": {"p": N.p, "n": 1, "modulus": [0, 1], "m": k},
    })
    return Standardization(T, canonical, N)
