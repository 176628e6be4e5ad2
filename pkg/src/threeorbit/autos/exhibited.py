"""Explicit automorphisms for each family, as (g, h) pairs.

Every g is written down from the construction (field multiplications,
Frobenius, symplectic root elements, ...); h is never written down but
solved by ``lift_check``.  A g that does not lift raises LiftFailure.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import LiftFailure, UnknownFamily
from ..exterior import induced_map
from ..ffield import FieldCtx, ff_make, multiplicative_order
from ..fplinalg import Subspace, mat_inv, mat_mul
from ..gammal import GammaLElem, gl1_compose, gl1_subspace_stabilizer
from ..groups.cocycle import CocycleGroup
from ..groups.families import PRES_3_10_CENTRAL, SU3Model
from .lifting import AutoPair, lift_check


def _lift_all(N: CocycleGroup, gens: list[tuple[str, np.ndarray]], certify: int = 100) -> list[AutoPair]:
    out = []
    for label, g in gens:
        pair = lift_check(N, g % N.p, certify=certify, label=label)
        if pair is None:
            raise LiftFailure(f"generator {label!r} does not lift to {N.family.get('name')}", generator=label)
        out.append(pair)
    return out


def _ctx(params: dict) -> FieldCtx:
    return ff_make(int(params["p"]), int(params["n"]), params.get("modulus"))


def _blocks(ctx: FieldCtx, A) -> np.ndarray:
    """F_p-matrix of the F_q-matrix A (entries are field codes)."""
    f = ctx.n
    k = len(A)
    G = np.zeros((k * f, k * f), dtype=np.int64)
    for r in range(k):
        for c in range(k):
            if A[r][c]:
                G[r * f:(r + 1) * f, c * f:(c + 1) * f] = ctx.mul_matrix(A[r][c])
    return G


def _blockdiag(mats) -> np.ndarray:
    size = sum(len(M) for M in mats)
    G = np.zeros((size, size), dtype=np.int64)
    o = 0
    for M in mats:
        G[o:o + len(M), o:o + len(M)] = M
        o += len(M)
    return G


def _semilinear(ctx: FieldCtx, e: GammaLElem, blocks_scaled: int, blocks_total: int) -> np.ndarray:
    """Frobenius^i on every block, then lam^k on the first ``blocks_scaled`` blocks."""
    F = ctx.frobenius_matrix(e.i)
    S = mat_mul(ctx.mul_matrix(ctx.pow(ctx.lam, e.k)), F, ctx.p)
    return _blockdiag([S] * blocks_scaled + [F] * (blocks_total - blocks_scaled))


def symplectic_generators(ctx: FieldCtx, m: int) -> list[tuple[str, np.ndarray]]:
    """Root elements of Sp(2m, q) on coordinates (a_1..a_m, b_1..b_m), F_p-spanning parameters."""
    one = 1
    basis = [ctx.pow(ctx.lam, j) for j in range(ctx.n)] if ctx.n > 1 else [one]
    gens = []
    k = 2 * m

    def ident():
        return [[one if r == c else 0 for c in range(k)] for r in range(k)]

    for t in basis:
        for i in range(m):
            A = ident()
            A[i][m + i] = t  # a_i += t b_i
            gens.append((f"sp:a{i}+=t*b{i}:t={t}", _blocks(ctx, A)))
            B = ident()
            B[m + i][i] = t  # b_i += t a_i
            gens.append((f"sp:b{i}+=t*a{i}:t={t}", _blocks(ctx, B)))
        for i, j in itertools.permutations(range(m), 2):
            C = ident()
            C[i][j] = t  # a_i += t a_j, b_j -= t b_i
            C[m + j][m + i] = ctx.neg(t)
            gens.append((f"sp:a{i}+=t*a{j}:t={t}", _blocks(ctx, C)))
    return gens


def similitude_generators(ctx: FieldCtx, m: int, elems=None) -> list[tuple[str, np.ndarray]]:
    """GL(1,q)-similitudes: a -> lam^k a^(p^i), b -> b^(p^i) in every hyperbolic pair."""
    if elems is None:
        elems = [GammaLElem(ctx, 1, 0), GammaLElem(ctx, 0, 1)]
    out = []
    for e in elems:
        G = _semilinear(ctx, e, m, 2 * m)
        out.append((f"gammaL:k={e.k},i={e.i}", G))
    return out


def _gl1_generating_subset(elems: list[GammaLElem]) -> list[GammaLElem]:
    """A subset generating the same subgroup (greedy, in the given order)."""
    chosen: list[GammaLElem] = []
    reached = {(0, 0)}
    for e in elems:
        if e.key() in reached:
            continue
        chosen.append(e)
        frontier = list(reached)
        reached = set(reached)
        while frontier:
            nxt = []
            for key in frontier:
                a = GammaLElem(e.ctx, *key)
                for g in chosen:
                    b = gl1_compose(a, g).key()
                    if b not in reached:
                        reached.add(b)
                        nxt.append(b)
            frontier = nxt
    return chosen


def _extraspecial(N: CocycleGroup) -> list[AutoPair]:
    P = N.family["params"]
    ctx = _ctx(P)
    m = int(P.get("m", 1))
    return _lift_all(N, symplectic_generators(ctx, m) + similitude_generators(ctx, m))


def _central_quotient(N: CocycleGroup) -> list[AutoPair]:
    parent = N.family["params"]["parent"]
    if parent.get("name") not in ("extraspecial_q", "heisenberg_q"):
        raise UnknownFamily(f"central quotient of {parent.get('name')}")
    P = parent["params"]
    ctx = _ctx(P)
    m = int(P.get("m", 1))
    U = Subspace.from_gens(N.family["params"]["U"], ctx.n, ctx.p)
    stab = _gl1_generating_subset(gl1_subspace_stabilizer(U, ctx))
    return _lift_all(N, symplectic_generators(ctx, m) + similitude_generators(ctx, m, stab))


def _pres_3_10(N: CocycleGroup) -> list[AutoPair]:
    """x_i, y_j are the a- and b-coordinates of 81^{1+2} in the basis 1, lam, lam^2, lam^3."""
    ctx = ff_make(3, 4, [2, 0, 0, 2, 1])
    U = Subspace.from_gens(PRES_3_10_CENTRAL, 4, 3)
    stab = _gl1_generating_subset(gl1_subspace_stabilizer(U, ctx))
    return _lift_all(N, symplectic_generators(ctx, 1) + similitude_generators(ctx, 1, stab))


def subfield_linear_generators(ctx: FieldCtx, d: int) -> list[tuple[str, np.ndarray]]:
    """GL_{F_{p^d}}(F_{p^n}) generators as F_p-matrices.

    Uses the F_p-basis nu^a w^b (a < d, b < n/d) with nu generating F_{p^d}
    and w generating F_{p^n} over it; generators are diag(nu, 1, ...) and the
    elementary transvections I + nu^a E_ij.
    """
    p, n = ctx.p, ctx.n
    k = n // d
    nu = ctx.pow(ctx.lam, (ctx.q - 1) // (p ** d - 1))
    w = ctx.lam
    basis = [ctx.mul(ctx.pow(nu, a), ctx.pow(w, b)) for b in range(k) for a in range(d)]
    Bmat = np.stack([ctx.to_vec(c) for c in basis], axis=1)  # columns: basis in power coordinates
    Binv = mat_inv(Bmat, p)  # Singular here would mean w does not generate over F_{p^d}

    def as_fp(A) -> np.ndarray:
        """A is k x k over F_{p^d} (codes); image of nu^a w^b is nu^a * sum_c A[c][b] w^c."""
        cols = []
        for b in range(k):
            for a in range(d):
                img = 0
                for c in range(k):
                    if A[c][b]:
                        img = ctx.add(img, ctx.mul(ctx.mul(ctx.pow(nu, a), A[c][b]), ctx.pow(w, c)))
                cols.append(ctx.to_vec(img))
        G = np.stack(cols, axis=1)
        return mat_mul(G, Binv, p)

    def ident():
        return [[1 if r == c else 0 for c in range(k)] for r in range(k)]

    gens = []
    D = ident()
    D[0][0] = nu
    gens.append((f"gl{k}:diag(nu)", as_fp(D)))
    for i, j in itertools.permutations(range(k), 2):
        for a in range(d):
            T = ident()
            T[i][j] = ctx.pow(nu, a)
            gens.append((f"gl{k}:I+nu^{a}E{i}{j}", as_fp(T)))
    return gens


def _suzuki(N: CocycleGroup) -> list[AutoPair]:
    P = N.family["params"]
    ctx = _ctx(P)
    gens = [("xi:mult-lam", ctx.mul_matrix(ctx.lam)), ("frobenius", ctx.frobenius_matrix(1))]
    e = int(P["e"]) % ctx.n
    # for odd p and theta of order 3 the whole F_{p^(n/3)}-linear group lifts
    if ctx.p > 2 and ctx.n % 3 == 0 and e in (ctx.n // 3, 2 * ctx.n // 3):
        gens += subfield_linear_generators(ctx, ctx.n // 3)
    return _lift_all(N, gens)


def _su3(N: CocycleGroup) -> list[AutoPair]:
    P = N.family["params"]
    model = SU3Model(int(P["p"]), int(P["n"]))
    F = model.F
    # conjugation by diag(lam^-q, lam^(1-q), lam) scales a by lam^-1
    gens = [("scaler:diag", F.mul_matrix(F.inv(F.lam))), ("frobenius", F.frobenius_matrix(1))]
    return _lift_all(N, gens)


def general_linear_generators(n: int, p: int) -> list[tuple[str, np.ndarray]]:
    gens = []
    if p > 2:
        zeta = next(a for a in range(2, p) if multiplicative_order(a, p, p) == p - 1)
        D = np.eye(n, dtype=np.int64)
        D[0, 0] = zeta
        gens.append(("gl:diag", D))
    T = np.eye(n, dtype=np.int64)
    if n > 1:
        T[0, 1] = 1
        gens.append(("gl:transvection", T))
        C = np.roll(np.eye(n, dtype=np.int64), 1, axis=0)
        gens.append(("gl:cycle", C))
    return gens


def _heisenberg_quotient(N: CocycleGroup) -> list[AutoPair]:
    P = N.family["params"]
    n, p = int(P["n"]), int(P["p"])
    W = Subspace.from_gens(P.get("W") or [], n * (n - 1) // 2, p)
    gens = [(lab, g) for lab, g in general_linear_generators(n, p) if W.is_invariant(induced_map(g, p))]
    return _lift_all(N, gens)


EXHIBITORS = {
    "extraspecial_q": _extraspecial,
    "heisenberg_q": _extraspecial,
    "central_quotient": _central_quotient,
    "pres_3_10": _pres_3_10,
    "suzuki_A": _suzuki,
    "su3_sylow": _su3,
    "heisenberg_quotient": _heisenberg_quotient,
    "p_epsilon": lambda N: [],
}


def exhibited_gens(N: CocycleGroup) -> list[AutoPair]:
    """Lifted explicit generators for N's family (empty when none are known)."""
    name = N.family.get("name")
    try:
        fn = EXHIBITORS[name]
    except KeyError:
        raise UnknownFamily(str(name)) from None
    return fn(N)
