"""Automorphism orbits of a group given only by its Cayley table.

Independent of the cocycle machinery: it sees nothing but the table.
Automorphisms are determined by the images of a generating sequence
x_1..x_L.  A Schreier-style pass over the chain of pointwise stabilisers
of x_1, x_2, ... finds, for every candidate image not yet reached, one
automorphism realising it or proves none exists.  The result generates
Aut(T), so its orbits are exact.  The pass stops early once the orbits of
the automorphisms found so far coincide with the classes of an
isomorphism-invariant labelling, since true orbits can never be coarser.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BudgetExhausted, TooLarge
from ..groups.table import TableGroup
from .orbits import OrbitReport, orbit_labels, report_from_labels

ORACLE_CAP = 729
DEFAULT_BUDGET = 5 * 10 ** 7
BATCH = 2048


def element_invariants(T: TableGroup) -> np.ndarray:
    """Class id per element from (order, centraliser size, number of square roots)."""
    tab = T.table
    orders = T.element_orders
    cent = (tab == tab.T).sum(axis=1)
    roots = np.bincount(np.diag(tab), minlength=T.order)
    inv = np.stack([orders, cent, roots], axis=1)
    _, cls = np.unique(inv, axis=0, return_inverse=True)
    return cls.reshape(-1)


def subgroup_closure(T: TableGroup, gens) -> np.ndarray:
    """Sorted element indices of the subgroup generated by ``gens``."""
    tab = T.table
    seen = np.zeros(T.order, dtype=bool)
    seen[T.identity] = True
    frontier = np.array([T.identity])
    gens = np.asarray(list(gens), dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(tab[frontier][:, gens])
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


def greedy_generators(T: TableGroup, classes: np.ndarray, seed: int = 0, sample: int = 64) -> list[int]:
    """Generators chosen to grow the subgroup fastest, preferring small classes."""
    rng = np.random.default_rng(seed)
    class_size = np.bincount(classes)
    gens: list[int] = []
    H = subgroup_closure(T, gens)
    while len(H) < T.order:
        inH = np.zeros(T.order, dtype=bool)
        inH[H] = True
        cand = np.flatnonzero(~inH)
        tie = rng.permutation(len(cand))
        order = np.lexsort((tie, class_size[classes[cand]]))
        cand = cand[order][:sample]
        best, best_key = None, None
        for x in cand:
            size = len(subgroup_closure(T, gens + [int(x)]))
            key = (size, -class_size[classes[x]])
            if best_key is None or key > best_key:
                best, best_key = int(x), key
        gens.append(best)
        H = subgroup_closure(T, gens)
    # drop generators made redundant by later picks
    for x in list(gens):
        rest = [y for y in gens if y != x]
        if len(subgroup_closure(T, rest)) == T.order:
            gens = rest
    return gens


@dataclass
class _Tree:
    """Spanning tree of <x_1..x_k> in the Cayley graph."""

    elems: np.ndarray  # tree order, elems[0] = identity
    parent: np.ndarray
    gen: np.ndarray
    edges: np.ndarray  # edges[j, i] = position of elems[j] * x_i
    layers: list  # position ranges of equal depth, in order


def build_tree(T: TableGroup, gens: list[int]) -> _Tree:
    tab = T.table
    pos = {T.identity: 0}
    elems, parent, gen = [T.identity], [-1], [-1]
    layers = []
    start, head = 1, 0
    while head < len(elems):
        end = len(elems)
        for h in range(head, end):
            a = elems[h]
            for i, x in enumerate(gens):
                b = int(tab[a, x])
                if b not in pos:
                    pos[b] = len(elems)
                    elems.append(b)
                    parent.append(h)
                    gen.append(i)
        head = end
        if len(elems) > start:
            layers.append((start, len(elems)))
            start = len(elems)
    edges = np.array([[pos[int(tab[a, x])] for x in gens] for a in elems], dtype=np.int64)
    return _Tree(np.array(elems), np.array(parent), np.array(gen), edges, layers)


def _evaluate(T: TableGroup, tree: _Tree, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Images of the tree elements under x_i -> Y[:, i]; plus validity per row."""
    tab = T.table
    B = Y.shape[0]
    size = len(tree.elems)
    Phi = np.empty((B, size), dtype=np.int64)
    Phi[:, 0] = T.identity
    for lo, hi in tree.layers:
        Phi[:, lo:hi] = tab[Phi[:, tree.parent[lo:hi]], Y[:, tree.gen[lo:hi]]]
    ok = np.ones(B, dtype=bool)
    for i in range(Y.shape[1]):
        ok &= (Phi[:, tree.edges[:, i]] == tab[Phi, Y[:, i:i + 1]]).all(axis=1)
    S = np.sort(Phi, axis=1)
    ok &= (np.diff(S, axis=1) != 0).all(axis=1)
    return Phi, ok


class _Searcher:
    def __init__(self, T: TableGroup, gens: list[int], classes: np.ndarray, budget: int):
        self.T = T
        self.gens = gens
        self.classes = classes
        self.budget = budget
        self.nodes = 0
        self.trees = [build_tree(T, gens[: k + 1]) for k in range(len(gens))]
        self.cands = [np.flatnonzero(classes == classes[x]) for x in gens]

    def _charge(self, k: int):
        self.nodes += k
        if self.nodes > self.budget:
            raise BudgetExhausted(f"oracle exceeded {self.budget} candidate evaluations", nodes=self.nodes)

    def extend(self, prefix: list[int]) -> np.ndarray | None:
        """Some automorphism (as a permutation) with x_i -> prefix[i]."""
        k = len(prefix)
        if k:
            self._charge(1)
            _, ok = _evaluate(self.T, self.trees[k - 1], np.array([prefix]))
            if not ok[0]:
                return None
        return self._dfs(list(prefix))

    def _dfs(self, prefix: list[int]) -> np.ndarray | None:
        k = len(prefix)
        L = len(self.gens)
        if k == L:
            tree = self.trees[-1]
            Phi, ok = _evaluate(self.T, tree, np.array([prefix]))
            perm = np.empty(self.T.order, dtype=np.int64)
            perm[tree.elems] = Phi[0]
            return perm
        cands = self.cands[k]
        for s in range(0, len(cands), BATCH):
            chunk = cands[s:s + BATCH]
            self._charge(len(chunk))
            Y = np.empty((len(chunk), k + 1), dtype=np.int64)
            Y[:, :k] = prefix
            Y[:, k] = chunk
            _, ok = _evaluate(self.T, self.trees[k], Y)
            for y in chunk[ok]:
                res = self._dfs(prefix + [int(y)])
                if res is not None:
                    return res
        return None


@dataclass
class OracleResult:
    report: OrbitReport
    aut_perms: list
    generators: list[int]
    exact_by_invariants: bool
    nodes: int


def generic_aut_search(T: TableGroup, budget: int = DEFAULT_BUDGET, seed: int = 0,
                       cap: int = ORACLE_CAP) -> OracleResult:
    if T.order > cap:
        raise TooLarge(f"table of order {T.order} exceeds the oracle cap {cap}")
    classes = element_invariants(T)
    n_classes = len(np.unique(classes))
    if T.order == 1:
        rep = report_from_labels("N", np.zeros(1, dtype=np.int64), "table-oracle")
        return OracleResult(rep, [], [], True, 0)
    gens = greedy_generators(T, classes, seed)
    S = _Searcher(T, gens, classes, budget)
    found: list[np.ndarray] = []

    def orbits():
        return orbit_labels(T.order, found)

    def finished_by_invariants() -> bool:
        return len(np.unique(orbits())) == n_classes

    early = n_classes == T.order  # every element alone in its class: nothing to fuse
    if not early:
        for level in range(len(gens)):
            base = gens[:level]
            x = gens[level]
            failed = np.zeros(T.order, dtype=bool)
            while True:
                stab = [g for g in found if all(g[b] == b for b in base)]
                lab = orbit_labels(T.order, stab)
                reach = lab == lab[x]
                todo = [int(y) for y in S.cands[level] if not reach[y] and not failed[y]]
                if not todo:
                    break
                y = todo[0]
                perm = S.extend(base + [y])
                if perm is None:
                    failed |= lab == lab[y]
                    continue
                found.append(perm)
                if finished_by_invariants():
                    early = True
                    break
            if early:
                break
    rep = report_from_labels("N", orbits(), "table-oracle")
    return OracleResult(rep, found, gens, early, S.nodes)


def generic_aut_orbits(T: TableGroup, budget: int = DEFAULT_BUDGET, seed: int = 0,
                       cap: int = ORACLE_CAP) -> OrbitReport:
    return generic_aut_search(T, budget, seed, cap).report


def holomorph_rank(T: TableGroup, aut_perms, generators=None, cap: int = ORACLE_CAP) -> int:
    """Number of orbits of N:Aut(N) on ordered pairs of elements."""
    if T.order > cap:
        raise TooLarge(f"table of order {T.order} exceeds {cap}")
    N = T.order
    if generators is None:
        generators = greedy_generators(T, element_invariants(T))
    idx = np.arange(N)
    a, b = np.meshgrid(idx, idx, indexing="ij")
    a, b = a.ravel(), b.ravel()
    perms = []
    for g in generators:
        perms.append(T.table[a, g] * N + T.table[b, g])
    for s in aut_perms:
        s = np.asarray(s)
        perms.append(s[a] * N + s[b])
    return len(np.unique(orbit_labels(N * N, perms)))
