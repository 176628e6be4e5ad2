"""The semilinear group GL(1,q) acting on F_q viewed as F_p^n.

Elements (k, i) act by a -> lam^k * a^(p^i).  Everything here works with
F_p-coordinates in the power basis of the field's modulus, so a subspace
of F_q is an ordinary ``Subspace`` of F_p^n.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import polyfp
from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    FieldMismatch,
    NotADivisor,
    PreconditionFailed,
)
from .ffield import FieldCtx, FieldElem, divisors, factorize, is_prime
from .fplinalg import (
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    identity,
    kernel,
    mat_mul,
    mat_pow,
    order_dividing,
    poly_eval_matrix,
    quotient_make,
    solve,
)


@dataclass(frozen=True)
class GammaLElem:
    """a -> lam^k * a^(p^i) on the field ``ctx``."""

    ctx: FieldCtx = field(repr=False)
    k: int
    i: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % (self.ctx.q - 1))
        object.__setattr__(self, "i", self.i % self.ctx.n)

    def key(self) -> tuple[int, int]:
        return (self.k, self.i)


def gl1_elem(ctx: FieldCtx, k: int = 0, i: int = 0) -> GammaLElem:
    return GammaLElem(ctx, k, i)


def gl1_x(ctx: FieldCtx) -> GammaLElem:
    """Multiplication by the primitive element."""
    return GammaLElem(ctx, 1, 0)


def gl1_y(ctx: FieldCtx) -> GammaLElem:
    """The Frobenius map a -> a^p."""
    return GammaLElem(ctx, 0, 1)


def _same_field(*ctxs):
    if any(c != ctxs[0] for c in ctxs[1:]):
        raise FieldMismatch("operands live in different fields")


def gl1_apply(e: GammaLElem, a: FieldElem) -> FieldElem:
    _same_field(e.ctx, a.ctx)
    ctx = e.ctx
    return FieldElem(ctx, ctx.mul(ctx.pow(ctx.lam, e.k), ctx.frob(a.code, e.i)))


def gl1_compose(e: GammaLElem, f: GammaLElem) -> GammaLElem:
    """The map 'apply e, then f'."""
    _same_field(e.ctx, f.ctx)
    p = e.ctx.p
    return GammaLElem(e.ctx, f.k + e.k * p ** f.i, e.i + f.i)


def gl1_inverse(e: GammaLElem) -> GammaLElem:
    n, p = e.ctx.n, e.ctx.p
    return GammaLElem(e.ctx, -e.k * p ** ((n - e.i) % n), -e.i)


def gl1_order(e: GammaLElem) -> int:
    cur, k = e, 1
    while cur.key() != (0, 0):
        cur = gl1_compose(cur, e)
        k += 1
    return k


def gl1_matrix(e: GammaLElem) -> np.ndarray:
    """F_p-matrix (acting on columns) of the semilinear map."""
    ctx = e.ctx
    return mat_mul(ctx.mul_matrix(ctx.pow(ctx.lam, e.k)), ctx.frobenius_matrix(e.i), ctx.p)


def gl1_elements(ctx: FieldCtx) -> list[GammaLElem]:
    return [GammaLElem(ctx, k, i) for i in range(ctx.n) for k in range(ctx.q - 1)]


def _codes_of(U: Subspace, ctx: FieldCtx) -> np.ndarray:
    return ctx.from_vecs(U.elements())


def gl1_subspace_stabilizer(U: Subspace, ctx: FieldCtx) -> list[GammaLElem]:
    """All (k, i) with U^e = U, by testing the images of U's basis."""
    if U.n != ctx.n or U.p != ctx.p:
        raise FieldMismatch("subspace does not live in this field")
    if U.dim in (0, ctx.n):
        return gl1_elements(ctx)
    q = ctx.q
    member = np.zeros(q, dtype=bool)
    member[_codes_of(U, ctx)] = True
    basis = ctx.from_vecs(U.matrix)
    ks = np.arange(q - 1)
    out = []
    for i in range(ctx.n):
        logs = ctx.log[[ctx.frob(int(b), i) for b in basis]]
        images = ctx.exp[(ks[:, None] + logs[None, :]) % (q - 1)]
        for k in np.flatnonzero(member[images].all(axis=1)):
            out.append(GammaLElem(ctx, int(k), i))
    return out


def is_closed(elems: list[GammaLElem]) -> bool:
    keys = {e.key() for e in elems}
    return all(gl1_compose(a, b).key() in keys for a in elems for b in elems)


def quotient_image(U: Subspace, ctx: FieldCtx, stab=None) -> list[np.ndarray]:
    """Distinct matrices induced on F_q / U by the stabilizer of U."""
    stab = gl1_subspace_stabilizer(U, ctx) if stab is None else stab
    Q = quotient_make(U)
    seen: dict[bytes, np.ndarray] = {}
    for e in stab:
        A = Q.induced(gl1_matrix(e))
        seen.setdefault(A.tobytes(), A)
    return [seen[k] for k in sorted(seen)]


def quotient_transitive(U: Subspace, ctx: FieldCtx, stab=None) -> bool:
    """Is the stabilizer of U transitive on the nonzero vectors of F_q / U?"""
    if U.dim >= ctx.n:
        raise PreconditionFailed("U must be a proper subspace")
    p, k = ctx.p, ctx.n - U.dim
    mats = quotient_image(U, ctx, stab)
    start = tuple([1] + [0] * (k - 1))
    seen = {start}
    frontier = [np.array(start)]
    while frontier:
        nxt = []
        for v in frontier:
            for A in mats:
                w = tuple(int(c) for c in (A @ v) % p)
                if w not in seen:
                    seen.add(w)
                    nxt.append(np.array(w))
        frontier = nxt
    return len(seen) == p ** k - 1


# --- subfield hyperplanes ------------------------------------------------


@dataclass(frozen=True)
class LinearField:
    """F_{p^n} known only through F_p-linear maps in the power basis.

    Enough for subspace questions in fields far too large for log tables.
    """

    p: int
    n: int
    modulus: tuple

    @cached_property
    def _red(self) -> polyfp.Reducer:
        return polyfp.Reducer(np.array(self.modulus, dtype=np.int64), self.p)

    def mul_matrix_vec(self, a) -> np.ndarray:
        """Matrix of multiplication by the element with coordinates ``a``."""
        a = np.asarray(a, dtype=np.int64)
        cols = []
        cur = self._red.reduce(a)
        x = self._red.x()
        for _ in range(self.n):
            cols.append(cur)
            cur = self._red.mulmod(cur, x)
        return np.stack(cols, axis=1)

    @cached_property
    def _frob1(self) -> np.ndarray:
        return self._power_columns(self._red.powmod(self._red.x(), self.p))

    def _power_columns(self, a) -> np.ndarray:
        cols = []
        cur = np.eye(1, self.n, 0, dtype=np.int64)[0]
        for _ in range(self.n):
            cols.append(cur)
            cur = self._red.mulmod(cur, a)
        return np.stack(cols, axis=1)

    def frobenius_matrix(self, i: int = 1) -> np.ndarray:
        return mat_pow(self._frob1, i % self.n, self.p)

    def fixed_space(self, d: int) -> Subspace:
        """The subfield F_{p^d} as a subspace of coordinates."""
        F = (self.frobenius_matrix(d) - identity(self.n)) % self.p
        return Subspace.from_gens(kernel(F, self.p), self.n, self.p)

    def subfield_generator(self, d: int) -> np.ndarray:
        """Coordinates of an element generating F_{p^d} as a field."""
        if d <= 0 or self.n % d:
            raise NotADivisor(f"{d} does not divide {self.n}")
        one = np.eye(1, self.n, 0, dtype=np.int64)[0]
        if d == 1:
            return one
        S = self.fixed_space(d)
        smaller = [self.fixed_space(d // r) for r in factorize(d)]
        for coeffs in itertools.product(range(self.p), repeat=S.dim):
            v = (np.array(coeffs, dtype=np.int64) @ S.matrix) % self.p
            if v.any() and not any(T.contains(v) for T in smaller):
                return v
        raise ConstructionFailed(f"no generator of the degree-{d} subfield found")


def linear_field(p: int, n: int, modulus=None) -> LinearField:
    mod = polyfp.find_irreducible(p, n) if modulus is None else np.asarray(modulus, dtype=np.int64) % p
    return LinearField(p, n, tuple(int(c) for c in mod))


def subfield_multiplier(field_, d: int) -> np.ndarray:
    """Multiplication by a generator of F_{p^d}; for FieldCtx it is lam^l, l = (q-1)/(p^d-1)."""
    if d <= 0 or field_.n % d:
        raise NotADivisor(f"{d} does not divide {field_.n}")
    if isinstance(field_, FieldCtx):
        ell = (field_.q - 1) // (field_.p ** d - 1)
        return field_.mul_matrix(field_.pow(field_.lam, ell))
    return field_.mul_matrix_vec(field_.subfield_generator(d))


def trace_hyperplane(field_, d: int) -> Subspace:
    """Kernel of the relative trace F_q -> F_{p^d}; F_p-dimension n - d."""
    n, p = field_.n, field_.p
    if d <= 0 or n % d:
        raise NotADivisor(f"{d} does not divide {n}")
    F = field_.frobenius_matrix(d)
    T = np.zeros((n, n), dtype=np.int64)
    P = identity(n)
    for _ in range(n // d):
        T = (T + P) % p
        P = mat_mul(P, F, p)
    return Subspace.from_gens(kernel(T, p), n, p)


def is_subfield_hyperplane(U: Subspace, d: int, field_) -> bool:
    """dim U = n - d and U is invariant under multiplication by F_{p^d}."""
    if d <= 0 or field_.n % d:
        raise NotADivisor(f"{d} does not divide {field_.n}")
    return U.dim == field_.n - d and U.is_invariant(subfield_multiplier(field_, d))


def hyperplane_orbit(ctx: FieldCtx, d: int) -> list[Subspace]:
    """Images of the trace hyperplane under multiplication by lam^k, sorted."""
    T = trace_hyperplane(ctx, d)
    L = ctx.mul_matrix(ctx.lam)
    seen = {T}
    cur = T
    for _ in range(ctx.q - 2):
        cur = cur.image(L)
        seen.add(cur)
    return sorted(seen, key=lambda S: S.basis)


def subfield_hyperplanes(ctx: FieldCtx, d: int) -> list[Subspace]:
    """All subfield hyperplanes for F_{p^d}, by filtering the full enumeration."""
    if d <= 0 or ctx.n % d:
        raise NotADivisor(f"{d} does not divide {ctx.n}")
    L = subfield_multiplier(ctx, d)
    found = [U for U in enumerate_subspaces(ctx.n, ctx.p, ctx.n - d) if U.is_invariant(L)]
    expected = (ctx.q - 1) // (ctx.p ** d - 1)
    if len(found) != expected:
        raise ConstructionFailed(f"found {len(found)} subfield hyperplanes, expected {expected}")
    if set(found) != set(hyperplane_orbit(ctx, d)):
        raise ConstructionFailed("subfield hyperplanes differ from the orbit of the trace hyperplane")
    return found


def largest_subfield_submodule(U: Subspace, L: np.ndarray, d: int) -> Subspace:
    """{u : L^j u in U for j < d}: the largest F_p[L]-submodule inside U."""
    n, p = U.n, U.p
    if U.dim == n:
        return U
    A = U.annihilator
    blocks = []
    M = identity(n)
    for _ in range(d):
        blocks.append((A @ M) % p)
        M = mat_mul(L, M, p)
    return Subspace.from_gens(kernel(np.vstack(blocks), p), n, p)


def contains_subfield_hyperplane(U: Subspace, field_):
    """First (d, witness) with a subfield hyperplane for F_{p^d} inside U, or None.

    Proper subfields only (d < n): for d = n the hyperplane is 0, which
    every U contains.  An F_{p^d}-subspace in U has dimension at most that
    of the largest F_{p^d}-submodule U_d of U, so one exists iff
    dim U_d >= n - d.
    """
    n, p = field_.n, field_.p
    for d in divisors(n):
        if d == n:
            continue
        L = subfield_multiplier(field_, d)
        Ud = largest_subfield_submodule(U, L, d)
        if Ud.dim >= n - d:
            witness = Ud if Ud.dim == n - d else trace_hyperplane(field_, d)
            return d, witness
    return None


def gl1_subspace_orbit(U: Subspace, ctx: FieldCtx) -> list[Subspace]:
    """Orbit of U under <x, y> = GL(1,q)-semilinear, sorted by echelon basis."""
    gens = [ctx.mul_matrix(ctx.lam), ctx.frobenius_matrix(1)]
    seen = {U}
    frontier = [U]
    while frontier:
        nxt = []
        for S in frontier:
            for g in gens:
                T = S.image(g)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: S.basis)


# --- census ---------------------------------------------------------------


def _classify(args):
    ctx, dim, start, stop = args
    rows = []
    it = enumerate_subspaces(ctx.n, ctx.p, dim, start)
    for U in itertools.islice(it, stop - start):
        has = contains_subfield_hyperplane(U, ctx) is not None
        trans = quotient_transitive(U, ctx)
        rows.append((U.to_rows(), has, trans))
    return rows


def admissible_scan(ctx: FieldCtx, dim: int, jobs: int = 1, include_rows: bool = False) -> dict:
    """Census of all dim-dimensional U: subfield-hyperplane flag vs quotient transitivity.

    Cells: ``hyperplane`` (contains one, not transitive), ``admissible``
    (no hyperplane, transitive: the witnesses), ``both`` and ``neither``.
    """
    if not 0 <= dim < ctx.n:
        raise PreconditionFailed("dimension must satisfy 0 <= dim < n")
    total = gaussian_binomial(ctx.n, dim, ctx.p)
    jobs = max(1, int(jobs))
    step = -(-total // jobs)
    chunks = [(ctx, dim, s, min(total, s + step)) for s in range(0, total, step)]
    if jobs == 1:
        parts = [_classify(c) for c in chunks]
    else:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_classify, chunks))
    cells = {"hyperplane": 0, "admissible": 0, "both": 0, "neither": 0}
    witnesses, table = [], []
    for rows in parts:
        for basis, has, trans in rows:
            cell = "both" if has and trans else "hyperplane" if has else "admissible" if trans else "neither"
            cells[cell] += 1
            if cell == "admissible":
                witnesses.append(basis)
            if include_rows:
                table.append({"basis": basis, "hyperplane": has, "transitive": trans, "cell": cell})
    out = {
        "q": ctx.q,
        "p": ctx.p,
        "n": ctx.n,
        "modulus": list(ctx.modulus),
        "dim": dim,
        "total": total,
        "cells": cells,
        "witness_count": len(witnesses),
        "witnesses": witnesses,
    }
    if include_rows:
        out["rows"] = table
    return out


# --- a large admissible subspace from a Frobenius block -------------------

EXAMPLE_DIM_CAP = 400


@dataclass
class FrobeniusBlock:
    p: int
    r: int
    n: int
    modulus: tuple
    factor: list[int]  # monic degree-r factor of the n-th cyclotomic polynomial, low first
    R: Subspace
    U: Subspace
    order_on_R: int
    quotient_orbit: int
    subfield_hyperplane: object  # None when U contains none

    @property
    def structure_ok(self) -> bool:
        """R is a faithful r-dimensional block and Frobenius is transitive on (V/U) - 0."""
        return (self.R.dim == self.r and self.U.dim == self.n - self.r and self.order_on_R == self.n
                and self.quotient_orbit == self.p ** self.r - 1)

    @property
    def hyperplane_free(self) -> bool:
        return self.subfield_hyperplane is None

    def to_json(self) -> dict:
        hp = self.subfield_hyperplane
        return {
            "p": self.p,
            "r": self.r,
            "n": self.n,
            "factor": self.factor,
            "dim_R": self.R.dim,
            "dim_U": self.U.dim,
            "order_on_R": self.order_on_R,
            "quotient_orbit": self.quotient_orbit,
            "structure_ok": self.structure_ok,
            "subfield_hyperplane": None if hp is None else {"d": hp[0], "dim": hp[1].dim},
        }


def _first_factor(f: np.ndarray, r: int, p: int) -> np.ndarray | None:
    """Lexicographically first monic degree-r divisor of f (low coefficients first)."""
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=r - 1):
            g = np.array((c0,) + rest + (1,), dtype=np.int64)
            if not polyfp.mod(f, g, p).any():
                return g
    return None


def example55_certificate(p: int, r: int) -> FrobeniusBlock:
    """U of codimension r in F_{p^n}, n = p^r - 1, with a transitive Frobenius quotient.

    y is the Frobenius of F_{p^n}; x^n - 1 is squarefree, so V splits as
    the kernels of g(y) and ((x^n - 1)/g)(y) for a degree-r factor g of the
    n-th cyclotomic polynomial.  R = ker g(y) is a faithful r-dimensional
    block and U = ker(((x^n - 1)/g)(y)) is its y-invariant complement.
    """
    if not (is_prime(p) and is_prime(r) and p > 2 and r > 2):
        raise PreconditionFailed("p and r must be odd primes")
    if (p - 1) % r == 0:
        raise PreconditionFailed("r must not divide p - 1")
    n = p ** r - 1
    if n > EXAMPLE_DIM_CAP:
        raise BudgetExceeded(f"n = {n} exceeds the linear-algebra cap {EXAMPLE_DIM_CAP}")
    F = linear_field(p, n)
    y = F.frobenius_matrix(1)
    if order_dividing(y, n, p) != n:
        raise ConstructionFailed("Frobenius does not have order n")
    cyc = polyfp.cyclotomic(n, p)
    g = _first_factor(cyc, r, p)
    if g is None:
        raise ConstructionFailed(f"no degree-{r} factor of the {n}-th cyclotomic polynomial")
    xn1 = polyfp.poly([-1] + [0] * (n - 1) + [1], p)
    h, rem = polyfp.divmod_(xn1, g, p)
    assert not rem.any()
    R = Subspace.from_gens(kernel(poly_eval_matrix(g, y, p), p), n, p)
    U = Subspace.from_gens(kernel(poly_eval_matrix(h, y, p), p), n, p)
    if R.dim != r or U.dim != n - r or R.sum(U).dim != n:
        raise ConstructionFailed("primary decomposition did not split as expected")
    # y restricted to R: y B^T = B^T yR in the basis of R's rows
    Bt = R.matrix.T
    yR = solve(Bt, (y @ Bt) % p, p)
    order_on_R = order_dividing(yR, n, p)
    Q = quotient_make(U)
    yQ = Q.induced(y)
    v0 = np.eye(1, r, 0, dtype=np.int64)[0]
    v, orbit = v0, 0
    while True:
        v = (yQ @ v) % p
        orbit += 1
        if np.array_equal(v, v0):
            break
    return FrobeniusBlock(p, r, n, F.modulus, [int(c) for c in g], R, U, order_on_R, orbit,
                          contains_subfield_hyperplane(U, F))


def example55_subspace(p: int, r: int) -> tuple[Subspace, Subspace]:
    """(R, U); whether U avoids subfield hyperplanes is reported by the certificate."""
    cert = example55_certificate(p, r)
    if not cert.structure_ok:
        raise ConstructionFailed("the Frobenius block failed certification")
    return cert.R, cert.U


def dual_scalar_power(cert: FrobeniusBlock) -> int | None:
    """Scalar by which y^m, m = (p^r - 1)/(p - 1), acts on the trace-dual of U.

    A scalar c means every ratio of dual vectors is fixed by y^m, so the dual
    lies in t * F_{p^m} and U contains the F_{p^m}-hyperplane ker Tr(t . ).
    None if y^m is not scalar there.
    """
    p, n = cert.p, cert.n
    F = LinearField(p, n, cert.modulus)
    y = F.frobenius_matrix(1)
    T = np.zeros((n, n), dtype=np.int64)
    P = identity(n)
    for _ in range(n):
        T = (T + P) % p
        P = mat_mul(y, P, p)
    tr = T[0]  # Tr(a) lies in F_p, i.e. in the constant coordinate
    # Gram matrix of (a, b) -> Tr(ab) in the power basis
    G = np.stack([(tr @ F.mul_matrix_vec(np.eye(1, n, j, dtype=np.int64)[0])) % p for j in range(n)])
    dual = Subspace.from_gens(kernel((cert.U.matrix @ G) % p, p), n, p)
    m = (p ** cert.r - 1) // (p - 1)
    B = dual.matrix
    ym = F.frobenius_matrix(m)
    for c in range(1, p):
        if not ((B @ ym.T - c * B) % p).any():
            return c
    return None
