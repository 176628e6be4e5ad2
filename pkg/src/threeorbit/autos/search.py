"""Backtracking search for the image of Aut(N) in GL(V)."""

from __future__ import annotations

import numpy as np

from ..errors import BudgetExhausted, PreconditionFailed
from ..ffield import all_vectors
from ..fplinalg import encode_vectors, mat_order, solve
from ..groups.cocycle import CocycleGroup
from .lifting import AutoPair
from .orbits import orbit_labels, vector_perm

DEFAULT_BUDGET = 10 ** 8


class _LinearSystem:
    """Incrementally maintained constraints h(src) = tgt, kept in echelon form.

    Tracks the source span (with targets carried along) and the target span
    separately so that consistency and injectivity are checked per addition.
    """

    def __init__(self, m: int, p: int, rows=None, tgt_rows=None):
        self.m, self.p = m, p
        self.rows = rows if rows is not None else []  # (pivot, aug row of length 2m)
        self.tgt_rows = tgt_rows if tgt_rows is not None else []  # (pivot, row)

    @property
    def determined(self) -> bool:
        return len(self.rows) == self.m

    def _reduce(self, vec, rows):
        vec = vec.copy()
        for piv, r in rows:
            c = vec[piv]
            if c:
                vec = (vec - c * r) % self.p
        return vec

    def add(self, s, t) -> "_LinearSystem | None":
        p, m = self.p, self.m
        aug = self._reduce(np.concatenate([s, t]) % p, self.rows)
        s_part = aug[:m]
        if not s_part.any():
            return self if not aug[m:].any() else None
        t_red = self._reduce(np.asarray(t) % p, self.tgt_rows)
        if not t_red.any():
            return None  # would make h non-injective
        piv = int(np.flatnonzero(s_part)[0])
        aug = (aug * pow(int(aug[piv]), -1, p)) % p
        rows = [(pv, (r - r[piv] * aug) % p) for pv, r in self.rows] + [(piv, aug)]
        tp = int(np.flatnonzero(t_red)[0])
        t_red = (t_red * pow(int(t_red[tp]), -1, p)) % p
        tgt_rows = [(pv, (r - r[tp] * t_red) % p) for pv, r in self.tgt_rows] + [(tp, t_red)]
        return _LinearSystem(m, p, rows, tgt_rows)

    def h(self) -> np.ndarray:
        """The determined map as an m x m matrix."""
        S = np.array([r[: self.m] for _, r in self.rows])
        T = np.array([r[self.m:] for _, r in self.rows])
        hT = solve(S, T, self.p)
        return hT.T % self.p


def stabilizer_search(N: CocycleGroup, mode: str = "full_enumerate", orders=None,
                      budget: int = DEFAULT_BUDGET, seed: int | None = None, max_n: int = 8) -> list[AutoPair]:
    """Depth-first search over images of the standard basis of V.

    mode is ``full_enumerate``, ``find_orders`` (with ``orders``) or
    ``transitive_witness``.
    """
    if N.n > max_n or N.p not in (2, 3):
        raise PreconditionFailed("search is limited to n <= 8 and p in {2, 3}")
    p, n, m = N.p, N.n, N.m
    vecs = all_vectors(n, p)
    codes_order = np.arange(len(vecs))
    if seed is not None:
        codes_order = np.random.default_rng(seed).permutation(len(vecs))
    C, B = N.comm_tensor, N.beta
    sq_all = N.square_map(vecs) if p == 2 else None
    sq_e = np.array([B[i, i] for i in range(n)])

    found: list[AutoPair] = []
    wanted = set(orders or [])
    got_orders: set[int] = set()
    nodes = 0

    def done() -> bool:
        if mode == "find_orders":
            return wanted <= got_orders
        if mode == "transitive_witness" and found:
            lab_v = orbit_labels(p ** n, [vector_perm(a.g, n, p, vecs) for a in found])
            lab_m = orbit_labels(p ** m, [vector_perm(a.h, m, p) for a in found])
            return len(np.unique(lab_v)) == 2 and len(np.unique(lab_m)) == 2
        return False

    class _Stop(Exception):
        pass

    def record(W, system):
        g = np.array(W, dtype=np.int64).T
        pair = AutoPair(g, system.h())
        if mode == "find_orders":
            o = mat_order(g, p, bound=10 ** 5)
            if o in wanted and o not in got_orders:
                got_orders.add(o)
                found.append(pair)
        else:
            found.append(pair)
        if done():
            raise _Stop

    def dfs(k, W, span_mask, system):
        nonlocal nodes
        if k == n:
            record(W, system)
            return
        cand = codes_order[~span_mask[codes_order]]
        nodes += len(cand)
        if nodes > budget:
            raise BudgetExhausted(f"search exceeded {budget} nodes", nodes=nodes)
        X = vecs[cand]
        ok = np.ones(len(cand), dtype=bool)
        cw = [np.einsum("i,ijk->jk", W[i], C) % p for i in range(k)]  # c(w_i, .)
        cvals = [(X @ cw[i]) % p for i in range(k)]
        for i in range(k):
            ok &= cvals[i].any(axis=1) == bool(C[i, k].any())
        if p == 2:
            ok &= sq_all[cand].any(axis=1) == bool(sq_e[k].any())
        if system.determined:
            h = system.h()
            for i in range(k):
                ok &= ((cvals[i] - h @ C[i, k]) % p == 0).all(axis=1)
            if p == 2:
                ok &= ((sq_all[cand] - h @ sq_e[k]) % p == 0).all(axis=1)
        for idx in np.flatnonzero(ok):
            w = X[idx]
            sysn = system
            for i in range(k):
                sysn = sysn.add(C[i, k], cvals[i][idx])
                if sysn is None:
                    break
            if sysn is not None and p == 2:
                sysn = sysn.add(sq_e[k], sq_all[cand[idx]])
            if sysn is None:
                continue
            # span of W + w
            new_mask = span_mask.copy()
            members = vecs[span_mask]
            for c in range(1, p):
                new_mask[encode_vectors((members + c * w) % p, p)] = True
            dfs(k + 1, W + [w], new_mask, sysn)

    start_mask = np.zeros(len(vecs), dtype=bool)
    start_mask[0] = True
    try:
        dfs(0, [], start_mask, _LinearSystem(m, p))
    except _Stop:
        pass
    return found


def is_group_closed(pairs: list[AutoPair], p: int) -> bool:
    """Closure under composition and inverses of a finite set of pairs."""
    keys = {a.key() for a in pairs}
    for a in pairs:
        for b in pairs:
            if a.compose(b, p).key() not in keys:
                return False
    return True
