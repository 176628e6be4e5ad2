"""Orbit computations under explicit generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import TooLarge
from ..ffield import all_vectors
from ..fplinalg import encode_vectors
from ..groups.cocycle import CocycleGroup
from .lifting import AutoPair, central_generators, element_permutation

ELEMENT_ORBIT_CAP = 3 ** 12


@dataclass
class OrbitReport:
    label: str
    count: int
    sizes: list[int]
    representatives: list
    method: str
    labels: np.ndarray | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "action": self.label,
            "count": self.count,
            "sizes": self.sizes,
            "representatives": self.representatives,
            "method": self.method,
        }


def orbit_labels(size: int, perms) -> np.ndarray:
    """Component label per point, components numbered by their least point."""
    perms = [np.asarray(g, dtype=np.int64) for g in perms]
    if not perms:
        return np.arange(size)
    src = np.concatenate([np.arange(size)] * len(perms))
    dst = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, lab = connected_components(graph, directed=True, connection="weak")
    # renumber by first occurrence so labels are deterministic
    _, first = np.unique(lab, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    return remap[lab]


def report_from_labels(label: str, lab: np.ndarray, method: str, rep_fn=None) -> OrbitReport:
    _, first, counts = np.unique(lab, return_index=True, return_counts=True)
    order = np.argsort(first)
    reps = [int(first[i]) for i in order]
    if rep_fn is not None:
        reps = [rep_fn(r) for r in reps]
    return OrbitReport(label, len(first), sorted(int(c) for c in counts), reps, method, lab)


def vector_perm(g, n: int, p: int, vecs=None) -> np.ndarray:
    vecs = all_vectors(n, p) if vecs is None else vecs
    return encode_vectors((vecs @ np.asarray(g).T) % p, p)


def linear_orbits(mats, n: int, p: int, label: str, method: str) -> OrbitReport:
    if p ** n > ELEMENT_ORBIT_CAP:
        raise TooLarge(f"{p}^{n} vectors exceed the orbit cap")
    vecs = all_vectors(n, p)
    lab = orbit_labels(p ** n, [vector_perm(g, n, p, vecs) for g in mats])
    return report_from_labels(label, lab, method, lambda r: vecs[r].tolist())


def orbit_count_special(N: CocycleGroup, pairs: list[AutoPair], method: str = "exhibited"):
    """(report on V, report on M, r = o(V) + o(M) - 1)."""
    rv = linear_orbits([a.g for a in pairs], N.n, N.p, "V", method)
    rm = linear_orbits([a.h for a in pairs], N.m, N.p, "M", method)
    return rv, rm, rv.count + rm.count - 1


def orbit_partition_elements(N: CocycleGroup, pairs: list[AutoPair], include_K: bool = True,
                             method: str = "exhibited") -> OrbitReport:
    if N.order > ELEMENT_ORBIT_CAP:
        raise TooLarge(f"group of order {N.order} exceeds the element orbit cap")
    E = N.elements()
    perms = [element_permutation(N, a, None, E) for a in pairs]
    if include_K:
        ident = AutoPair(np.eye(N.n, dtype=np.int64), np.eye(N.m, dtype=np.int64))
        perms += [element_permutation(N, ident, k, E) for k in central_generators(N)]
    lab = orbit_labels(N.order, perms)
    return report_from_labels("N", lab, method, lambda r: E[r].tolist())


def table_orbits(order: int, perms, method: str, label: str = "N") -> OrbitReport:
    return report_from_labels(label, orbit_labels(order, perms), method)


def homocyclic_orbits(p: int, n: int) -> OrbitReport:
    """Orbits of the exhibited GL(n, Z/p^2) generators on (Z/p^2)^n."""
    from ..groups.families import mk_homocyclic

    T = mk_homocyclic(p, n)
    labels = T.labels
    return report_from_labels("Z_{p^2}^n", orbit_labels(T.order, T.aut_gens), "exhibited",
                              lambda r: labels[r])
