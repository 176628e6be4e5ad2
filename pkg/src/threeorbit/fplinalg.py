"""Dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  Vectors
act as columns (``A @ v``); subspaces are stored by their reduced row
echelon basis so that equality is identity of echelon forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import polyfp
from .errors import BoundExceeded, DimensionMismatch, Singular, ZeroPolynomial
from .ffield import factorize


def as_mat(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(A, B, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return (A @ B) % p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    M = as_mat(A, p).copy()
    if M.ndim == 1:
        M = M[None, :]
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def kernel(A, p: int) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = as_mat(A, p)
    if A.ndim == 1:
        A = A[None, :]
    cols = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for r, pc in enumerate(piv):
            K[i, pc] = (-R[r, f]) % p
    return K


def solve(A, b, p: int) -> np.ndarray | None:
    """Some x with A x = b, or None when the system is inconsistent."""
    A = as_mat(A, p)
    b = as_mat(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"rows of A ({A.shape[0]}) and b ({b.shape[0]}) differ")
    cols = A.shape[1]
    R, piv = rref(np.hstack([A, b]), p)
    if any(pc >= cols for pc in piv):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, cols:]
    return x[:, 0] if vec else x


def mat_inv(A, p: int) -> np.ndarray:
    A = as_mat(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch(f"inverse of non-square {A.shape}")
    R, piv = rref(np.hstack([A, identity(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise Singular("matrix is singular")
    return R[:, n:]


def mat_pow(A, e: int, p: int) -> np.ndarray:
    A = as_mat(A, p)
    if e < 0:
        A, e = mat_inv(A, p), -e
    result = identity(A.shape[0])
    while e:
        if e & 1:
            result = (result @ A) % p
        e >>= 1
        if e:
            A = (A @ A) % p
    return result


def is_identity(A) -> bool:
    return np.array_equal(A, identity(A.shape[0]))


def mat_order(A, p: int, bound: int = 10**6) -> int:
    """Least e >= 1 with A^e = I; BoundExceeded if none up to ``bound``."""
    A = as_mat(A, p)
    if rank(A, p) < A.shape[0]:
        raise Singular("order of a singular matrix")
    B = A.copy()
    for e in range(1, bound + 1):
        if is_identity(B):
            return e
        B = (B @ A) % p
    raise BoundExceeded(f"matrix order exceeds {bound}")


def order_dividing(A, m: int, p: int) -> int:
    """Exact order of A given that A^m = I (checked)."""
    A = as_mat(A, p)
    if not is_identity(mat_pow(A, m, p)):
        raise ValueError(f"A^{m} is not the identity")
    for r in factorize(m):
        while m % r == 0 and is_identity(mat_pow(A, m // r, p)):
            m //= r
    return m


def charpoly(A, p: int) -> np.ndarray:
    """Characteristic polynomial det(xI - A), coefficients low degree first.

    Hessenberg reduction by elementary similarities, then the standard
    three-term recurrence on leading principal minors.
    """
    H = as_mat(A, p).copy()
    n = H.shape[0]
    if H.shape != (n, n):
        raise DimensionMismatch("charpoly of a non-square matrix")
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        inv = pow(int(H[j + 1, j]), -1, p)
        for i in range(j + 2, n):
            u = (H[i, j] * inv) % p
            if u:
                H[i] = (H[i] - u * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + u * H[:, i]) % p
    polys = [np.array([1], dtype=np.int64)]
    for k in range(n):
        nxt = np.zeros(k + 2, dtype=np.int64)
        nxt[1:] += polys[k]
        nxt[: k + 1] -= H[k, k] * polys[k]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = (prod * H[i + 1, i]) % p
            if prod == 0:
                break
            c = (H[i, k] * prod) % p
            nxt[: i + 1] -= c * polys[i]
        polys.append(nxt % p)
    return polys[n]


def poly_squarefree(f, p: int) -> bool:
    f = np.asarray(f, dtype=np.int64) % p
    if not f.any():
        raise ZeroPolynomial("squarefree test of the zero polynomial")
    return polyfp.squarefree(f, p)


def poly_eval_matrix(f, A, p: int) -> np.ndarray:
    """f(A) by Horner's rule; f low degree first."""
    A = as_mat(A, p)
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(list(np.asarray(f, dtype=np.int64))):
        out = (out @ A + int(c) * identity(n)) % p
    return out


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def encode_vectors(rows, p: int) -> np.ndarray:
    """Big-endian integer codes, so code order is lexicographic order."""
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[-1]
    w = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows @ w


def decode_vectors(codes, n: int, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (n,), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[..., i] = codes % p
        codes = codes // p
    return out


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n held by its reduced echelon basis (rows)."""

    n: int
    p: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_gens(cls, gens, n: int, p: int) -> "Subspace":
        G = np.asarray(gens, dtype=np.int64) if len(gens) else np.zeros((0, n), dtype=np.int64)
        if G.ndim == 1:
            G = G.reshape(-1, n) if G.size % max(n, 1) == 0 else G.reshape(1, -1)
        if G.shape[-1] != n:
            raise DimensionMismatch(f"generators of length {G.shape[-1]}, ambient {n}")
        R, _ = rref(G, p) if len(G) else (G, [])
        return cls(n, p, tuple(tuple(int(x) for x in row) for row in R))

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(n, p, ())

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls.from_gens(identity(n), n, p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.n)

    @cached_property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.matrix]

    def _check(self, other: "Subspace"):
        if other.n != self.n or other.p != self.p:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    @cached_property
    def annihilator(self) -> np.ndarray:
        """Rows spanning {x : b . x = 0 for all basis rows b}."""
        if self.dim == 0:
            return identity(self.n)
        return kernel(self.matrix, self.p)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape[-1] != self.n:
            raise DimensionMismatch("vector length differs from ambient dimension")
        return not ((self.annihilator @ v.T) % self.p).any()

    def contains_all(self, vs) -> np.ndarray:
        """Boolean membership for each row of ``vs``."""
        vs = np.asarray(vs, dtype=np.int64)
        return ~((vs @ self.annihilator.T) % self.p).any(axis=1)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or bool(self.contains_all(other.matrix).all())

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_gens(np.vstack([self.matrix, other.matrix]), self.n, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        A = np.vstack([self.annihilator, other.annihilator])
        return Subspace.from_gens(kernel(A, self.p), self.n, self.p)

    def complement(self) -> "Subspace":
        """Greedy complement spanned by standard basis vectors."""
        cur = self.matrix
        chosen = []
        for i in range(self.n):
            if len(chosen) + self.dim == self.n:
                break
            e = np.zeros(self.n, dtype=np.int64)
            e[i] = 1
            trial = np.vstack([cur, e])
            if rank(trial, self.p) > len(cur):
                cur = trial
                chosen.append(e)
        return Subspace.from_gens(chosen, self.n, self.p)

    def image(self, g) -> "Subspace":
        """g(U) for an n x n matrix g acting on columns."""
        if self.dim == 0:
            return self
        return Subspace.from_gens((self.matrix @ np.asarray(g).T) % self.p, self.n, self.p)

    def is_invariant(self, g) -> bool:
        if self.dim == 0:
            return True
        return bool(self.contains_all((self.matrix @ np.asarray(g).T) % self.p).all())

    def elements(self) -> np.ndarray:
        """All vectors of U (p^dim rows)."""
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)
        if self.dim == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        return (coeffs @ self.matrix) % self.p

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def enumerate_subspaces(n: int, p: int, k: int, start: int = 0):
    """Every k-dimensional subspace of F_p^n once, ordered lexicographically
    by flattened echelon matrix.  ``start`` skips that many entries."""
    if not 0 <= k <= n:
        return
    mats = []
    for piv in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(piv):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            mats.append(tuple(tuple(int(x) for x in row) for row in M))
    mats.sort(key=lambda m: tuple(x for row in m for x in row))
    for basis in mats[start:]:
        yield Subspace(n, p, basis)


class QuotientSpace:
    """F_p^n / U with coordinates on the non-pivot columns of U's echelon basis."""

    def __init__(self, U: Subspace):
        self.U = U
        self.n = U.n
        self.p = U.p
        piv = set(U.pivots)
        self.free = [c for c in range(self.n) if c not in piv]
        self.dim = len(self.free)
        P = np.zeros((self.dim, self.n), dtype=np.int64)
        for j in range(self.n):
            e = np.zeros(self.n, dtype=np.int64)
            e[j] = 1
            P[:, j] = self._project_one(e)
        self.P = P
        L = np.zeros((self.n, self.dim), dtype=np.int64)
        for i, c in enumerate(self.free):
            L[c, i] = 1
        self.L = L

    def _project_one(self, v):
        v = v.copy()
        for row, pc in zip(self.U.matrix, self.U.pivots):
            if v[pc]:
                v = (v - v[pc] * row) % self.p
        return v[self.free]

    def project(self, v) -> np.ndarray:
        """Works on a single vector or on rows of a matrix."""
        v = np.asarray(v, dtype=np.int64)
        return (v @ self.P.T) % self.p

    def lift(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        return (coords @ self.L.T) % self.p

    def induced(self, g) -> np.ndarray:
        """Matrix of g on V/U; g must leave U invariant."""
        return (self.P @ np.asarray(g) @ self.L) % self.p


def quotient_make(U: Subspace) -> QuotientSpace:
    return QuotientSpace(U)
