"""Constructors for the 3-orbit group families and their building blocks."""

from __future__ import annotations

import numpy as np

from ..errors import (
    CenterMismatch,
    EvenCharacteristic,
    NoTraceOneElement,
    NotPrimitiveDivisor,
    NotPrime,
    NotSpecialQuotient,
    PreconditionFailed,
    Singular,
    TooLarge,
    WNotProper,
)
from ..exterior import ExtSquare, wedge
from ..ffield import FieldCtx, ff_make, is_prime
from ..fplinalg import Subspace, kernel, mat_inv, quotient_make, solve
from .cocycle import CocycleGroup
from .table import TABLE_CAP, TableGroup


def _basis_codes(ctx: FieldCtx) -> list[int]:
    return [ctx.p ** i for i in range(ctx.n)]


def _field_params(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus)}


def _require_odd(p: int):
    if p == 2:
        raise EvenCharacteristic("construction needs odd characteristic")


# --- free class-2 exponent-p groups and their quotients -----------------

def mk_heisenberg_quotient(n: int, p: int, W: Subspace | None = None) -> CocycleGroup:
    """H_{n,p} / W with centre Lambda^2(F_p^n) / W."""
    _require_odd(p)
    ext = ExtSquare(n, p)
    if W is None:
        W = Subspace.zero(ext.dim, p)
    if W.dim >= ext.dim:
        raise WNotProper("W must be a proper subspace of the exterior square")
    Q = quotient_make(W)
    beta = np.zeros((n, n, Q.dim), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            beta[i, j] = Q.project(wedge(eye[i], eye[j], p))
    return CocycleGroup(p, n, Q.dim, beta, {
        "name": "heisenberg_quotient", "params": {"n": n, "p": p, "W": W.to_rows()},
    })


# --- extraspecial q-groups ----------------------------------------------

def mk_heisenberg_q(ctx: FieldCtx) -> CocycleGroup:
    """Upper unitriangular 3x3 matrices over F_q; beta((a,b),(a',b')) = a b'."""
    return mk_extraspecial_q(ctx, 1, name="heisenberg_q")


def mk_extraspecial_q(ctx: FieldCtx, m: int, name: str = "extraspecial_q") -> CocycleGroup:
    """q^{1+2m}: V = F_q^{2m} as (a_1..a_m, b_1..b_m), beta = sum a_i b'_i."""
    _require_odd(ctx.p)
    f = ctx.n
    codes = _basis_codes(ctx)
    prod = np.array([[ctx.to_vec(ctx.mul(x, y)) for y in codes] for x in codes], dtype=np.int64)
    n = 2 * m * f
    beta = np.zeros((n, n, f), dtype=np.int64)
    for i in range(m):
        a0, b0 = i * f, (m + i) * f
        beta[a0:a0 + f, b0:b0 + f] = prod
    params = _field_params(ctx)
    if name == "extraspecial_q":
        params["m"] = m
    return CocycleGroup(ctx.p, n, f, beta, {"name": name, "params": params})


def central_product(N1: CocycleGroup, N2: CocycleGroup, phi=None) -> CocycleGroup:
    """Identify the centres via phi: M1 -> M2 and glue V1 + V2."""
    if N1.p != N2.p or N1.m != N2.m:
        raise CenterMismatch("centres have different orders")
    p, m = N1.p, N1.m
    phi = np.eye(m, dtype=np.int64) if phi is None else np.asarray(phi, dtype=np.int64) % p
    try:
        phi_inv = mat_inv(phi, p)
    except Singular as exc:
        raise CenterMismatch("phi is not a bijection between the centres") from exc
    n = N1.n + N2.n
    beta = np.zeros((n, n, m), dtype=np.int64)
    beta[: N1.n, : N1.n] = N1.beta
    beta[N1.n:, N1.n:] = np.einsum("kl,ijl->ijk", phi_inv, N2.beta) % p
    return CocycleGroup(p, n, m, beta, {
        "name": "central_product",
        "params": {"left": N1.family, "right": N2.family, "phi": phi.tolist()},
    })


# --- Suzuki 2-groups and their odd analogues ------------------------------

def mk_suzuki_A(ctx: FieldCtx, e: int) -> CocycleGroup:
    """Matrices M(a,b,theta); beta(a, a') = a * theta(a'), theta = x -> x^(p^e)."""
    codes = _basis_codes(ctx)
    beta = np.array(
        [[ctx.to_vec(ctx.mul(x, ctx.frob(y, e))) for y in codes] for x in codes], dtype=np.int64
    )
    params = _field_params(ctx)
    params["e"] = e
    return CocycleGroup(ctx.p, ctx.n, ctx.n, beta, {"name": "suzuki_A", "params": params})


def suzuki_matrix_product(ctx: FieldCtx, e: int, x, y):
    """Product of M(a,b) and M(a',b') read off the 3x3 unitriangular matrices.

    M(a,b) has first row (1, a, b) and second row (0, 1, theta(a)); only the
    (1,3) entry is nontrivial, so the product is returned as a pair of codes.
    """
    (a, b), (a2, b2) = x, y
    # (1,3) entry: b2 + a * theta(a2) + b
    return ctx.add(a, a2), ctx.add(ctx.add(b, b2), ctx.mul(a, ctx.frob(a2, e)))


# --- Sylow p-subgroups of SU(3, q) ----------------------------------------

class SU3Model:
    """Explicit model of {M(a,b) : b + b^q = a^(1+q)} inside 3x3 matrices over F_{q^2}.

    M(a,b) has rows (1, a, b), (0, 1, a^q), (0, 0, 1); the product entry is
    b + b' + a a'^q.  A section b0(a) with b0 + b0^q = a^(1+q) identifies the
    group with pairs (a, z), z in M = {z : z + z^q = 0}.
    """

    def __init__(self, p: int, f: int):
        self.p, self.f = p, f
        self.q = p ** f
        self.F = ff_make(p, 2 * f)
        F = self.F
        # M as the kernel of z -> z + z^q
        A = (np.eye(2 * f, dtype=np.int64) + F.frobenius_matrix(f)) % p
        self.M_basis = kernel(A, p)
        self.e = None
        if p == 2:
            for c in range(F.q):
                if F.add(c, F.frob(c, f)) == 1:
                    self.e = c
                    break
            if self.e is None:
                raise NoTraceOneElement("no element with e + e^q = 1")
            self.half = None
        else:
            self.half = F.inv(F.smul(2, 1))

    def norm(self, a: int) -> int:
        return self.F.mul(a, self.F.frob(a, self.f))

    def section(self, a: int) -> int:
        n = self.norm(a)
        if self.p == 2:
            return self.F.mul(self.e, n)
        return self.F.mul(self.half, n)

    def beta_code(self, a: int, a2: int) -> int:
        F, f = self.F, self.f
        w = F.mul(a, F.frob(a2, f))
        if self.p == 2:
            t = F.add(w, F.frob(w, f))
            return F.add(F.mul(self.e, t), w)
        return F.mul(self.half, F.sub(w, F.frob(w, f)))

    def z_coords(self, z: int) -> np.ndarray:
        x = solve(self.M_basis.T, self.F.to_vec(z), self.p)
        if x is None:
            raise ValueError("value outside the centre subspace")
        return x

    def z_code(self, coords) -> int:
        return self.F.from_vec(np.asarray(coords) @ self.M_basis)

    def to_matrix_entries(self, a: int, z: int) -> tuple[int, int]:
        """(a, b) with b = b0(a) + z."""
        return a, self.F.add(self.section(a), z)

    def matrix_product(self, x, y) -> tuple[int, int]:
        (a, b), (a2, b2) = x, y
        F = self.F
        return F.add(a, a2), F.add(F.add(b, b2), F.mul(a, F.frob(a2, self.f)))

    def on_variety(self, a: int, b: int) -> bool:
        F = self.F
        return F.add(b, F.frob(b, self.f)) == self.norm(a)


def mk_su3_sylow(ctx: FieldCtx, certify: int = 100, seed: int = 0) -> CocycleGroup:
    """Sylow p-subgroup of SU(3, q) for q = p^n, as a cocycle group."""
    p, f = ctx.p, ctx.n
    model = SU3Model(p, f)
    F = model.F
    codes = _basis_codes(F)
    n = 2 * f
    beta = np.array([[model.z_coords(model.beta_code(x, y)) for y in codes] for x in codes], dtype=np.int64)
    N = CocycleGroup(p, n, f, beta, {
        "name": "su3_sylow",
        "params": {
            "p": p, "n": f, "q": model.q, "field": F.describe(),
            "constraint": "b+b^q=a^(1+q)", "literal_constraint": "b+b^q+a^(1+q)=0",
        },
    })
    _certify_su3(N, model, certify, seed)
    return N


def _certify_su3(N: CocycleGroup, model: SU3Model, samples: int, seed: int):
    """Closure and homomorphism check of the cocycle model against the matrices."""
    rng = np.random.default_rng(seed)
    F = model.F
    for _ in range(samples):
        x = rng.integers(0, N.p, N.n + N.m)
        y = rng.integers(0, N.p, N.n + N.m)
        xy = N.mul_rows(x, y)
        mx = model.to_matrix_entries(F.from_vec(x[:N.n]), model.z_code(x[N.n:]))
        my = model.to_matrix_entries(F.from_vec(y[:N.n]), model.z_code(y[N.n:]))
        prod = model.matrix_product(mx, my)
        if not model.on_variety(*prod):
            raise AssertionError("matrix model is not closed")
        mxy = model.to_matrix_entries(F.from_vec(xy[:N.n]), model.z_code(xy[N.n:]))
        if prod != mxy:
            raise AssertionError("cocycle model disagrees with the matrix product")


# --- the 2-group P(epsilon) -------------------------------------------------

# squares x_i^2 and commutators [x_i, x_j] (i < j) as lists of z-indices (1-based)
P_EPSILON_SQUARES = {1: [2], 2: [2, 3], 3: [2], 4: [3], 5: [1, 2, 3], 6: [3]}
P_EPSILON_COMMUTATORS = {
    (1, 2): [1, 2], (3, 5): [1, 2], (3, 6): [1, 2],
    (1, 3): [1, 3],
    (1, 4): [3],
    (1, 5): [2], (3, 4): [2], (5, 6): [2],
    (1, 6): [],
    (2, 6): [1, 2, 3],
    (2, 3): [1], (2, 4): [1], (4, 6): [1],
    (2, 5): [2, 3], (4, 5): [2, 3],
}


def _zvec(idx: list[int], m: int) -> np.ndarray:
    v = np.zeros(m, dtype=np.int64)
    for k in idx:
        v[k - 1] = 1
    return v


def mk_p_epsilon() -> CocycleGroup:
    n, m = 6, 3
    beta = np.zeros((n, n, m), dtype=np.int64)
    for i, sq in P_EPSILON_SQUARES.items():
        beta[i - 1, i - 1] = _zvec(sq, m)
    for (i, j), cm in P_EPSILON_COMMUTATORS.items():
        beta[i - 1, j - 1] = _zvec(cm, m)
    return CocycleGroup(2, n, m, beta, {"name": "p_epsilon", "params": {}})


# --- the order-3^10 group given by generators x_i, y_j, z_k ---------------

# [x_i, y_j] as exponent vectors on z_1..z_4
PRES_3_10_COMMUTATORS = {
    (1, 1): [1, 0, 0, 0],
    (1, 2): [0, 1, 0, 0], (2, 1): [0, 1, 0, 0],
    (1, 3): [0, 0, 1, 0], (2, 2): [0, 0, 1, 0], (3, 1): [0, 0, 1, 0],
    (1, 4): [0, 0, 0, 1], (2, 3): [0, 0, 0, 1], (3, 2): [0, 0, 0, 1], (4, 1): [0, 0, 0, 1],
    (2, 4): [1, 0, 0, 1], (3, 3): [1, 0, 0, 1], (4, 2): [1, 0, 0, 1],
    (3, 4): [1, 1, 0, 1], (4, 3): [1, 1, 0, 1],
    (4, 4): [1, 1, 1, 1],
}
# central relations z1 z3 = 1 and z2^2 z3 z4^2 = 1
PRES_3_10_CENTRAL = [[1, 0, 1, 0], [0, 2, 1, 2]]


def mk_pres_3_10() -> CocycleGroup:
    """Exponent-3 group on x_1..x_4, y_1..y_4 with centre z_1..z_4 modulo two relations.

    Built from the defining relations alone: a cocycle on the free centre
    F_3^4, then the central quotient by the relation subspace.
    """
    p, n, m = 3, 8, 4
    beta = np.zeros((n, n, m), dtype=np.int64)
    for (i, j), z in PRES_3_10_COMMUTATORS.items():
        beta[i - 1, 4 + j - 1] = z
    free = CocycleGroup(p, n, m, beta, {"name": "pres_3_10_free", "params": {}})
    U = Subspace.from_gens(PRES_3_10_CENTRAL, m, p)
    N = central_quotient(free, U)
    N.family = {"name": "pres_3_10", "params": {"relations": PRES_3_10_CENTRAL}}
    return N


# --- central quotients ------------------------------------------------------

def central_quotient(N: CocycleGroup, U: Subspace) -> CocycleGroup:
    if U.n != N.m or U.p != N.p:
        raise PreconditionFailed("U must be a subspace of the centre coordinates")
    if U.dim >= N.m:
        raise PreconditionFailed("U must be a proper subspace of the centre")
    Q = quotient_make(U)
    beta = Q.project(N.beta.reshape(-1, N.m)).reshape(N.n, N.n, Q.dim)
    out = CocycleGroup(N.p, N.n, Q.dim, beta, {
        "name": "central_quotient", "params": {"parent": N.family, "U": U.to_rows()},
    })
    if out.radical().dim:
        raise NotSpecialQuotient("quotient commutator form has a nonzero radical")
    return out


# --- Cayley tables ------------------------------------------------------------

def to_table(N: CocycleGroup, chunk: int = 512) -> TableGroup:
    """Cayley table with element i the i-th (v, z) in lexicographic order."""
    if N.order > TABLE_CAP:
        raise TooLarge(f"group of order {N.order} exceeds the table cap")
    E = N.elements()
    T = np.empty((N.order, N.order), dtype=np.int64)
    for s in range(0, N.order, chunk):
        X = E[s:s + chunk, None, :]
        T[s:s + chunk] = N.index_of(N.mul_rows(np.broadcast_to(X, (X.shape[0], N.order, E.shape[1])).copy(),
                                               np.broadcast_to(E, (X.shape[0],) + E.shape).copy()))
    return TableGroup(T, identity=0, name=N.family.get("name", "cocycle"), data={"cocycle": N.family})


# --- non-special rows ---------------------------------------------------------

def is_primitive_prime_divisor(q: int, p: int, k: int) -> bool:
    """q divides p^k - 1 but no p^i - 1 with i < k."""
    if (p ** k - 1) % q:
        return False
    return all((p ** i - 1) % q for i in range(1, k))


def mk_pq_frobenius(p: int, q: int, n: int = 1) -> TableGroup:
    """Affine group {x -> mu^s x + w} on F_{p^(q-1)}^n, mu of order q."""
    if not (is_prime(p) and is_prime(q)):
        raise NotPrime("p and q must be prime")
    if not is_primitive_prime_divisor(q, p, q - 1):
        raise NotPrimitiveDivisor(f"{q} is not a primitive prime divisor of {p}^{q - 1} - 1")
    Qf = p ** (q - 1)
    size = Qf ** n * q
    if size > TABLE_CAP:
        raise TooLarge(f"order {size} exceeds the table cap")
    F = ff_make(p, q - 1)
    mu = F.pow(F.lam, (Qf - 1) // q)
    W = np.array(np.unravel_index(np.arange(Qf ** n), (Qf,) * n)).T.reshape(-1, n)  # rows of codes
    Pn = Qf ** n
    weights = Qf ** np.arange(n - 1, -1, -1)

    def index(s, w):
        return (s % q) * Pn + (w @ weights)

    mu_pows = [F.pow(mu, s) for s in range(q)]
    idx_s = np.repeat(np.arange(q), Pn)
    idx_w = np.tile(W, (q, 1))
    T = np.empty((size, size), dtype=np.int64)
    for i in range(size):
        s, w = idx_s[i], idx_w[i]
        # (s, w)(s', w') = (s + s', w + mu^s w')
        w2 = F.add_arr(np.broadcast_to(w, idx_w.shape), F.mul_arr(mu_pows[s], idx_w))
        T[i] = index(idx_s + s, w2)

    def perm_from(fn):
        out = np.empty(size, dtype=np.int64)
        for i in range(size):
            s2, w2 = fn(int(idx_s[i]), idx_w[i])
            out[i] = index(s2, np.asarray(w2))
        return out

    def translate(t):
        # conjugation by x -> x + t sends (s, w) to (s, w + t - mu^s t)
        def fn(s, w):
            shift = F.add_arr(t, F.mul_arr(F.neg(mu_pows[s]), t))
            return s, F.add_arr(w, shift)
        return fn

    gens = []
    for k in range(n):
        t = np.zeros(n, dtype=np.int64)
        t[k] = 1
        gens.append(perm_from(translate(t)))
        lam_k = np.ones(n, dtype=np.int64)
        lam_k[k] = F.lam
        gens.append(perm_from(lambda s, w, lk=lam_k: (s, F.mul_arr(lk, w))))
    if n >= 2:
        def transvect(s, w):
            w = w.copy()
            w[0] = F.add(int(w[0]), int(w[1]))
            return s, w
        gens.append(perm_from(transvect))
        gens.append(perm_from(lambda s, w: (s, np.roll(w, 1))))
    gens.append(perm_from(lambda s, w: ((s * p) % q, F.pow_arr(w, p))))
    labels = [[int(s)] + [int(c) for c in w] for s, w in zip(idx_s, idx_w)]
    return TableGroup(T, identity=0, labels=labels, name="pq_frobenius", aut_gens=gens, data={
        "family": {"name": "pq_frobenius", "params": {"p": p, "q": q, "n": n}},
        "field": F.describe(),
    })


def mk_homocyclic(p: int, n: int) -> TableGroup:
    """(Z/p^2)^n with GL(n, Z/p^2) generators acting on it."""
    mod = p * p
    size = mod ** n
    if size > TABLE_CAP:
        raise TooLarge(f"order {size} exceeds the table cap")
    E = np.array(np.unravel_index(np.arange(size), (mod,) * n)).T.reshape(-1, n)
    weights = mod ** np.arange(n - 1, -1, -1)
    T = np.empty((size, size), dtype=np.int64)
    for i in range(size):
        T[i] = ((E[i] + E) % mod) @ weights
    unit = 3 if p == 2 else _unit_generator(p)
    mats = [(unit * np.eye(n, dtype=np.int64)) % mod]
    d = np.eye(n, dtype=np.int64)
    d[0, 0] = unit
    mats.append(d)
    for i in range(n):
        for j in range(n):
            if i != j:
                t = np.eye(n, dtype=np.int64)
                t[i, j] = 1
                mats.append(t)
    perms = [((E @ A.T) % mod) @ weights for A in mats]
    return TableGroup(T, identity=0, labels=E.tolist(), name="homocyclic", aut_gens=perms, data={
        "family": {"name": "homocyclic", "params": {"p": p, "n": n}},
        "matrices": [A.tolist() for A in mats],
        "modulus": mod,
    })


def _unit_generator(p: int) -> int:
    """A generator of (Z/p^2)^x for odd p."""
    mod = p * p
    phi = p * (p - 1)
    from ..ffield import factorize

    for g in range(2, mod):
        if g % p and all(pow(g, phi // r, mod) != 1 for r in factorize(phi)):
            return g
    raise AssertionError("no unit generator")
