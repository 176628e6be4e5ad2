"""Finite fields F_{p^n} in the power basis of a chosen modulus.

Elements are handled internally as integer codes ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``t**i`` (``t`` a root of the modulus).  For
fields with at most 2**16 elements, exp/log tables back multiplication;
larger fields fall back to polynomial arithmetic with the same results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import polyfp
from .errors import (
    FieldMismatch,
    NoPrimitiveElement,
    NotADivisor,
    NotPrime,
    ReducibleModulus,
    WrongLength,
)

TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p**n, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, n),) = f.items()
    return p, n


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def multiplicative_order(a: int, p: int, bound: int) -> int | None:
    """Order of a modulo p, or None if it exceeds ``bound``."""
    x = a % p
    for k in range(1, bound + 1):
        if x == 1:
            return k
        x = (x * a) % p
    return None


class FieldCtx:
    """Explicit model of F_{p^n}.

    ``modulus`` is the monic coefficient tuple (c_0, ..., c_n), low degree
    first.  ``lam`` is the code of a primitive element.
    """

    def __init__(self, p: int, n: int, modulus, lam: int | None = None):
        self.p = int(p)
        self.n = int(n)
        self.q = self.p ** self.n
        self.modulus = tuple(int(c) % self.p for c in modulus)
        self._red = polyfp.Reducer(np.array(self.modulus, dtype=np.int64), self.p)
        self._weights = [self.p ** i for i in range(self.n)]
        self.has_tables = self.q <= TABLE_LIMIT
        if self.has_tables:
            self._build_vec_table()
        self.lam = self._pick_primitive() if lam is None else int(lam)
        if self.has_tables:
            self._build_log_tables()

    # --- identity -------------------------------------------------------
    def _key(self):
        return (self.p, self.n, self.modulus, self.lam)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def describe(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    # --- coordinates ----------------------------------------------------
    def _build_vec_table(self):
        q, n, p = self.q, self.n, self.p
        codes = np.arange(q, dtype=np.int64)
        vt = np.empty((q, n), dtype=np.int64)
        for i in range(n):
            vt[:, i] = (codes // p ** i) % p
        self.vec_table = vt
        self.weights = np.array(self._weights, dtype=np.int64)

    def to_vec(self, a: int) -> np.ndarray:
        if self.has_tables:
            return self.vec_table[a].copy()
        out = np.empty(self.n, dtype=np.int64)
        for i in range(self.n):
            a, out[i] = divmod(a, self.p)
        return out

    def from_vec(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.n,):
            raise WrongLength(f"expected {self.n} coordinates, got shape {v.shape}")
        v = v % self.p
        return sum(int(c) * w for c, w in zip(v, self._weights))

    def to_vecs(self, codes) -> np.ndarray:
        """Vectorised to_vec; rows are coordinate vectors."""
        return self.vec_table[np.asarray(codes, dtype=np.int64)]

    def from_vecs(self, vecs) -> np.ndarray:
        return (np.asarray(vecs, dtype=np.int64) % self.p) @ self.weights

    # --- arithmetic on codes -------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.from_vec(self.to_vec(a) + self.to_vec(b))

    def sub(self, a: int, b: int) -> int:
        return self.from_vec(self.to_vec(a) - self.to_vec(b))

    def neg(self, a: int) -> int:
        return self.from_vec(-self.to_vec(a))

    def smul(self, c: int, a: int) -> int:
        """Multiply by an element of the prime field."""
        return self.from_vec(c * self.to_vec(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables and hasattr(self, "log"):
            return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])
        return self.from_vec(self._red.mulmod(self.to_vec(a), self.to_vec(b)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.has_tables and hasattr(self, "log"):
            return int(self.exp[(-self.log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self.has_tables and hasattr(self, "log"):
            return int(self.exp[(self.log[a] * e) % (self.q - 1)])
        e %= self.q - 1
        return self.from_vec(self._red.powmod(self.to_vec(a), e))

    def frob(self, a: int, i: int = 1) -> int:
        """a ** (p ** i)."""
        i %= self.n
        if i == 0 or a == 0:
            return a
        return self.pow(a, self.p ** i)

    def trace(self, a: int, d: int) -> int:
        """Relative trace from F_{p^n} down to F_{p^d}."""
        if d <= 0 or self.n % d:
            raise NotADivisor(f"{d} does not divide {self.n}")
        acc = 0
        for k in range(self.n // d):
            acc = self.add(acc, self.frob(a, d * k))
        return acc

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        m = self.q - 1
        for r in factorize(m):
            while m % r == 0 and self.pow(a, m // r) == 1:
                m //= r
        return m

    def is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        m = self.q - 1
        return all(self.pow(a, m // r) != 1 for r in factorize(m))

    def _pick_primitive(self) -> int:
        root = self.from_vec(self._red.x())
        if self.is_primitive(root):
            return root
        for a in range(1, self.q):
            if self.is_primitive(a):
                return a
        raise NoPrimitiveElement(f"no primitive element found in {self!r}")

    def _build_log_tables(self):
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        lam_vec = self.to_vec(self.lam)
        cur = np.zeros(self.n, dtype=np.int64)
        cur[0] = 1
        for k in range(q - 1):
            exp[k] = self.from_vec(cur)
            cur = self._red.mulmod(cur, lam_vec)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise NoPrimitiveElement("chosen element does not generate the multiplicative group")
        self.exp = exp
        self.log = log

    # --- vectorised helpers (table-backed fields only) -----------------
    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def add_arr(self, a, b) -> np.ndarray:
        return self.from_vecs(self.to_vecs(a) + self.to_vecs(b))

    def pow_arr(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    # --- F_p-linear views ----------------------------------------------
    def mul_matrix(self, a: int) -> np.ndarray:
        """Matrix of x -> a*x acting on coordinate column vectors."""
        cols = [self.to_vec(self.mul(a, self.p ** j)) for j in range(self.n)]
        return np.stack(cols, axis=1)

    def frobenius_matrix(self, i: int = 1) -> np.ndarray:
        cols = [self.to_vec(self.frob(self.p ** j, i)) for j in range(self.n)]
        return np.stack(cols, axis=1)

    def subfield(self, d: int) -> list[int]:
        """Codes of the subfield F_{p^d}, sorted."""
        if d <= 0 or self.n % d:
            raise NotADivisor(f"{d} does not divide {self.n}")
        if self.has_tables:
            step = (self.q - 1) // (self.p ** d - 1)
            return sorted([0] + [int(c) for c in self.exp[::step]])
        return sorted(a for a in range(self.q) if self.frob(a, d) == a)

    def elem(self, a) -> "FieldElem":
        if isinstance(a, FieldElem):
            return a
        if isinstance(a, (list, tuple, np.ndarray)):
            return FieldElem(self, self.from_vec(a))
        return FieldElem(self, int(a) % self.q if self.n == 1 else int(a))

    @cached_property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @cached_property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def elements(self):
        return (FieldElem(self, a) for a in range(self.q))


@dataclass(frozen=True)
class FieldElem:
    """A field element; ``code`` packs the power-basis coordinates."""

    ctx: FieldCtx = field(repr=False)
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.ctx.to_vec(self.code))

    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldMismatch("operands live in different fields")
            return other
        if isinstance(other, int):
            return FieldElem(self.ctx, self.ctx.smul(other, 1))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, o.code))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, o.code))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, o.code))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def frobenius(self, i: int = 1) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.frob(self.code, i))

    def trace(self, d: int) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.trace(self.code, d))

    def order(self) -> int:
        return self.ctx.order(self.code)


def ff_make(p: int, n: int, modulus=None) -> FieldCtx:
    """Build F_{p^n}; without a modulus the lexicographically first irreducible is used."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be positive")
    if modulus is None:
        mod = polyfp.find_irreducible(p, n)
    else:
        mod = np.asarray([int(c) % p for c in modulus], dtype=np.int64)
        if len(mod) != n + 1 or mod[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {n}")
        if not polyfp.is_irreducible(mod, p):
            raise ReducibleModulus(f"{list(mod)} is reducible over F_{p}")
    return FieldCtx(p, n, [int(c) for c in mod])


# convenience wrappers mirroring the element-level API
def ff_frobenius(x: FieldElem, i: int) -> FieldElem:
    return x.frobenius(i)


def ff_trace(x: FieldElem, d: int) -> FieldElem:
    return x.trace(d)


def ff_as_vector(x: FieldElem) -> tuple[int, ...]:
    return x.coeffs


def ff_from_vector(ctx: FieldCtx, v) -> FieldElem:
    return FieldElem(ctx, ctx.from_vec(v))


def all_vectors(n: int, p: int) -> np.ndarray:
    """All of F_p^n as rows, in lexicographic (itertools.product) order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
