"""Automorphisms of special groups modulo central maps.

An automorphism induces g on V = N/Z(N) and h on M = Z(N) with
h(c(u, v)) = c(gu, gv) and, for p = 2, h(s(v)) = s(gv).  Conversely every
such pair lifts: x = (v, z) -> (gv, hz + kappa(v) + phi(v)), where the
correction phi depends only on (g, h) and kappa is any linear map V -> M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidPair, Singular
from ..fplinalg import encode_vectors, mat_mul, rank, solve
from ..groups.cocycle import CocycleGroup


@dataclass(frozen=True, eq=False)
class AutoPair:
    g: np.ndarray
    h: np.ndarray
    label: str = ""

    def compose(self, other: "AutoPair", p: int) -> "AutoPair":
        """Apply ``other`` first, then ``self``."""
        return AutoPair(mat_mul(self.g, other.g, p), mat_mul(self.h, other.h, p))

    def key(self) -> tuple:
        return (self.g.tobytes(), self.h.tobytes())

    def to_json(self) -> dict:
        out = {"g": self.g.tolist(), "h": self.h.tolist()}
        if self.label:
            out["label"] = self.label
        return out


@dataclass(frozen=True, eq=False)
class CentralMap:
    """kappa: V -> M as an m x n matrix."""

    kappa: np.ndarray


def _pair_indices(n: int):
    return np.triu_indices(n, k=1)


def image_tensor(N: CocycleGroup, g, form: np.ndarray) -> np.ndarray:
    """T[i, j] = form(g e_i, g e_j) for a bilinear ``form`` tensor."""
    g = np.asarray(g, dtype=np.int64)
    return np.einsum("ai,bj,abk->ijk", g, g, form) % N.p


def compatibility_system(N: CocycleGroup, g):
    """(src, tgt) rows: h must send each src row to the tgt row."""
    iu, ju = _pair_indices(N.n)
    src = [N.comm_tensor[iu, ju]]
    tgt = [image_tensor(N, g, N.comm_tensor)[iu, ju]]
    if N.p == 2:
        d = np.arange(N.n)
        src.append(N.beta[d, d])
        tgt.append(image_tensor(N, g, N.beta)[d, d])
    return np.vstack(src), np.vstack(tgt)


def is_valid_pair(N: CocycleGroup, g, h) -> bool:
    src, tgt = compatibility_system(N, g)
    return bool(np.array_equal((src @ np.asarray(h).T) % N.p, tgt))


def lift_check(N: CocycleGroup, g, certify: int = 100, seed: int = 0, label: str = "") -> AutoPair | None:
    """Solve for h; None if g does not lift to an automorphism."""
    p = N.p
    g = np.asarray(g, dtype=np.int64) % p
    if rank(g, p) < N.n:
        raise Singular("g is not invertible")
    src, tgt = compatibility_system(N, g)
    # h src^T = tgt^T  <=>  src h^T = tgt
    hT = solve(src, tgt, p)
    if hT is None:
        return None
    h = hT.T % p
    if rank(h, p) < N.m:
        return None
    pair = AutoPair(g, h, label)
    if certify and not certify_pair(N, pair, certify, seed):
        raise AssertionError("solved pair failed the element-level certification")
    return pair


def correction_tensor(N: CocycleGroup, a: AutoPair) -> np.ndarray:
    """Bilinear tensor Q with phi(v) = Q(v, v)."""
    p = N.p
    D = (image_tensor(N, a.g, N.beta) - np.einsum("kl,ijl->ijk", a.h, N.beta)) % p
    if p == 2:
        return np.triu(D.transpose(2, 0, 1), k=1).transpose(1, 2, 0)
    half = pow(2, -1, p)
    return (half * D) % p


def element_action(N: CocycleGroup, a: AutoPair, kappa=None, X=None, check: bool = True) -> np.ndarray:
    """Image of the rows X = (v | z) under the lift of ``a`` twisted by kappa."""
    p, n = N.p, N.n
    if check and not is_valid_pair(N, a.g, a.h):
        raise InvalidPair("pair violates the commutator/squaring system")
    X = np.asarray(X, dtype=np.int64)
    V, Z = X[..., :n], X[..., n:]
    Q = correction_tensor(N, a)
    phi = np.einsum("...i,...j,ijk->...k", V, V, Q)
    Zn = Z @ a.h.T + phi
    if kappa is not None:
        K = kappa.kappa if isinstance(kappa, CentralMap) else np.asarray(kappa)
        Zn = Zn + V @ K.T
    return np.concatenate([(V @ a.g.T) % p, Zn % p], axis=-1)


def certify_pair(N: CocycleGroup, a: AutoPair, samples: int = 100, seed: int = 0, kappa=None) -> bool:
    rng = np.random.default_rng(seed)
    k = N.n + N.m
    X = rng.integers(0, N.p, (samples, k))
    Y = rng.integers(0, N.p, (samples, k))
    f = lambda R: element_action(N, a, kappa, R, check=False)  # noqa: E731
    return bool(np.array_equal(f(N.mul_rows(X, Y)), N.mul_rows(f(X), f(Y))))


def element_permutation(N: CocycleGroup, a: AutoPair, kappa=None, E=None) -> np.ndarray:
    """The lift as a permutation of element indices (lexicographic (v, z))."""
    E = N.elements() if E is None else E
    return encode_vectors(element_action(N, a, kappa, E), N.p)


def central_generators(N: CocycleGroup) -> list[CentralMap]:
    """The n*m elementary maps e_j -> f_k spanning K = Hom(V, M)."""
    out = []
    for k in range(N.m):
        for j in range(N.n):
            K = np.zeros((N.m, N.n), dtype=np.int64)
            K[k, j] = 1
            out.append(CentralMap(K))
    return out


def identity_pair(N: CocycleGroup) -> AutoPair:
    return AutoPair(np.eye(N.n, dtype=np.int64), np.eye(N.m, dtype=np.int64), "identity")
