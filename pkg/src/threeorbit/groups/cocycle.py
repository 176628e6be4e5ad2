"""Central cocycle groups: V x M with (v,z)(v',z') = (v+v', z+z'+beta(v,v'))."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import GroupMismatch, TooLarge
from ..fplinalg import Subspace, encode_vectors, kernel

ELEMENT_CAP = 3 ** 12


@dataclass(frozen=True)
class GroupElement:
    v: tuple[int, ...]
    z: tuple[int, ...]

    @classmethod
    def of(cls, v, z) -> "GroupElement":
        return cls(tuple(int(x) for x in v), tuple(int(x) for x in z))


@dataclass(eq=False)
class CocycleGroup:
    """Special-group engine.  ``beta[i, j]`` is beta(e_i, e_j) in F_p^m."""

    p: int
    n: int
    m: int
    beta: np.ndarray
    family: dict = field(default_factory=dict)

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=np.int64).reshape(self.n, self.n, self.m) % self.p
        self.beta.setflags(write=False)

    # --- basic data -----------------------------------------------------
    @property
    def order(self) -> int:
        return self.p ** (self.n + self.m)

    @cached_property
    def comm_tensor(self) -> np.ndarray:
        """c(e_i, e_j) = beta(e_i,e_j) - beta(e_j,e_i)."""
        return (self.beta - self.beta.transpose(1, 0, 2)) % self.p

    def same_table(self, other: "CocycleGroup") -> bool:
        return (self.p, self.n, self.m) == (other.p, other.n, other.m) and np.array_equal(self.beta, other.beta)

    # --- forms on V -----------------------------------------------------
    def beta_form(self, u, v) -> np.ndarray:
        """beta(u, v); u, v may be single vectors or stacked rows."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("...i,...j,ijk->...k", u, v, self.beta) % self.p

    def comm_form(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("...i,...j,ijk->...k", u, v, self.comm_tensor) % self.p

    def square_map(self, v) -> np.ndarray:
        return self.beta_form(v, v)

    def radical(self) -> Subspace:
        """{u : c(u, v) = 0 for all v}."""
        # rows indexed by (j, k), columns by i
        A = self.comm_tensor.transpose(1, 2, 0).reshape(self.n * self.m, self.n)
        if self.n == 0:
            return Subspace.zero(0, self.p)
        return Subspace.from_gens(kernel(A, self.p), self.n, self.p)

    def comm_span(self) -> Subspace:
        vals = self.comm_tensor.reshape(-1, self.m)
        return Subspace.from_gens(vals, self.m, self.p)

    def is_special(self) -> bool:
        return self.radical().dim == 0 and self.comm_span().dim == self.m

    def center_order(self) -> int:
        # Z(N) = {(v, z) : v in the radical of c}
        return self.p ** (self.radical().dim + self.m)

    # --- element operations --------------------------------------------
    def _check(self, *xs):
        for x in xs:
            if len(x.v) != self.n or len(x.z) != self.m:
                raise GroupMismatch("element does not belong to this group")

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, (0,) * self.m)

    def elem(self, v, z=None) -> GroupElement:
        if z is None:
            z = [0] * self.m
        x = GroupElement.of(np.asarray(v) % self.p, np.asarray(z) % self.p)
        self._check(x)
        return x

    def g_mul(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._check(x, y)
        v, z = np.array(x.v), np.array(x.z)
        v2, z2 = np.array(y.v), np.array(y.z)
        return GroupElement.of((v + v2) % self.p, (z + z2 + self.beta_form(v, v2)) % self.p)

    def g_inv(self, x: GroupElement) -> GroupElement:
        self._check(x)
        v, z = np.array(x.v), np.array(x.z)
        return GroupElement.of((-v) % self.p, (-z + self.beta_form(v, v)) % self.p)

    def g_pow(self, x: GroupElement, k: int) -> GroupElement:
        self._check(x)
        if k < 0:
            return self.g_pow(self.g_inv(x), -k)
        v, z = np.array(x.v), np.array(x.z)
        tri = k * (k - 1) // 2
        return GroupElement.of((k * v) % self.p, (k * z + tri * self.beta_form(v, v)) % self.p)

    def g_comm(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """x^-1 y^-1 x y."""
        self._check(x, y)
        return GroupElement((0,) * self.n, tuple(int(c) for c in self.comm_form(x.v, y.v)))

    def g_order(self, x: GroupElement) -> int:
        self._check(x)
        k, y = 1, x
        e = self.identity()
        while y != e:
            y = self.g_mul(y, x)
            k += 1
        return k

    # --- batched element arithmetic (rows are (v | z)) ------------------
    def mul_rows(self, X, Y) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        n = self.n
        out = X + Y
        out[..., n:] += self.beta_form(X[..., :n], Y[..., :n])
        return out % self.p

    def inv_rows(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        n = self.n
        out = -X
        out[..., n:] += self.square_map(X[..., :n])
        return out % self.p

    def pow_rows(self, X, k: int) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        n = self.n
        out = k * X
        out[..., n:] += (k * (k - 1) // 2) * self.square_map(X[..., :n])
        return out % self.p

    def order_rows(self, X) -> np.ndarray:
        """Element orders of each row (orders divide p^2 in a class-2 group of this kind)."""
        X = np.asarray(X, dtype=np.int64)
        orders = np.full(X.shape[0], self.p * self.p, dtype=np.int64)
        p_pow = self.pow_rows(X, self.p)
        orders[~p_pow.any(axis=1)] = self.p
        orders[~X.any(axis=1)] = 1
        return orders

    def elements(self) -> np.ndarray:
        """All elements as rows, lexicographic in (v, z)."""
        if self.order > ELEMENT_CAP:
            raise TooLarge(f"group of order {self.order} exceeds the enumeration cap")
        return np.array(list(itertools.product(range(self.p), repeat=self.n + self.m)), dtype=np.int64).reshape(
            -1, self.n + self.m
        )

    def index_of(self, X) -> np.ndarray:
        return encode_vectors(X, self.p)

    def check_associative(self, samples: int = 10_000, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        k = self.n + self.m
        X, Y, Z = (rng.integers(0, self.p, (samples, k)) for _ in range(3))
        left = self.mul_rows(self.mul_rows(X, Y), Z)
        right = self.mul_rows(X, self.mul_rows(Y, Z))
        return bool(np.array_equal(left, right))

    def describe(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "order": self.order,
            "center_order": self.center_order(),
            "family": self.family,
        }

    def __repr__(self):
        name = self.family.get("name", "cocycle")
        return f"CocycleGroup({name}, p={self.p}, n={self.n}, m={self.m})"
