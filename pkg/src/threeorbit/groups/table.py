"""Groups given by an explicit Cayley table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import TooLarge

TABLE_CAP = 1 << 12


@dataclass(eq=False)
class TableGroup:
    """``table[i, j]`` is the index of element i times element j."""

    table: np.ndarray
    identity: int = 0
    labels: list | None = None
    name: str = "table"
    # certified automorphisms as permutations of element indices
    aut_gens: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        if self.table.shape[0] > TABLE_CAP:
            raise TooLarge(f"table of order {self.table.shape[0]} exceeds {TABLE_CAP}")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = np.full(self.order, -1, dtype=np.int64)
        inv[rows] = cols
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        x = self.identity
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def comm(self, a: int, b: int) -> int:
        ai, bi = self.inv(a), self.inv(b)
        return int(self.table[self.table[ai, bi], self.table[a, b]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        N = self.order
        orders = np.zeros(N, dtype=np.int64)
        cur = np.arange(N)
        done = np.zeros(N, dtype=bool)
        k = 1
        while not done.all():
            hit = (cur == self.identity) & ~done
            orders[hit] = k
            done |= hit
            cur = self.table[cur, np.arange(N)]
            k += 1
        return orders

    def order_profile(self) -> dict[int, int]:
        vals, counts = np.unique(self.element_orders, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def is_group(self, samples: int = 200_000, seed: int = 0) -> bool:
        """Closure, identity, inverses; associativity exhaustive up to order 128."""
        T, N, e = self.table, self.order, self.identity
        if T.min() < 0 or T.max() >= N:
            return False
        if not (np.array_equal(T[e], np.arange(N)) and np.array_equal(T[:, e], np.arange(N))):
            return False
        # latin square rows and columns
        if not all(len(np.unique(T[i])) == N for i in range(N)):
            return False
        if not all(len(np.unique(T[:, i])) == N for i in range(N)):
            return False
        if N <= 128:
            left = T[T[:, :, None], np.arange(N)[None, None, :]]  # (ab)c
            right = T[np.arange(N)[:, None, None], T[None, :, :]]  # a(bc)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, N, samples) for _ in range(3))
        return bool(np.array_equal(T[T[a, b], c], T[a, T[b, c]]))

    def is_automorphism(self, perm) -> bool:
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.order)):
            return False
        return bool(np.array_equal(perm[self.table], self.table[perm[:, None], perm[None, :]]))

    def center(self) -> list[int]:
        T = self.table
        return [i for i in range(self.order) if np.array_equal(T[i], T[:, i])]


def cyclic_group(k: int) -> TableGroup:
    idx = np.arange(k)
    return TableGroup((idx[:, None] + idx[None, :]) % k, name=f"Z{k}")


def _perm_group(perms: list[tuple[int, ...]], name: str) -> TableGroup:
    index = {p: i for i, p in enumerate(perms)}
    N = len(perms)
    T = np.empty((N, N), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            # apply a first, then b
            T[i, j] = index[tuple(b[a[x]] for x in range(len(a)))]
    ident = index[tuple(range(len(perms[0])))]
    return TableGroup(T, identity=ident, labels=[list(p) for p in perms], name=name)


def _closure(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    deg = len(gens[0])
    seen = {tuple(range(deg))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(g[a[x]] for x in range(deg))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)


def dihedral_group(k: int) -> TableGroup:
    """Symmetry group of a k-gon, order 2k (D_4 has order 8)."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return _perm_group(_closure([rot, ref]), f"D{k}")


def quaternion_group() -> TableGroup:
    # regular representation of Q_8 on {1,-1,i,-i,j,-j,k,-k}
    units = ["1", "i", "j", "k"]
    mult = {
        ("1", u): (1, u) for u in units
    }
    mult.update({(u, "1"): (1, u) for u in units})
    mult.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    T = np.empty((8, 8), dtype=np.int64)
    for (s1, u1), (s2, u2) in itertools.product(elems, elems):
        s, u = mult[(u1, u2)]
        T[index[(s1, u1)], index[(s2, u2)]] = index[(s1 * s2 * s, u)]
    return TableGroup(T, identity=0, labels=[f"{'-' if s < 0 else ''}{u}" for s, u in elems], name="Q8")
