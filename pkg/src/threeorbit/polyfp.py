"""Univariate polynomials over F_p.

A polynomial a_0 + a_1 x + ... + a_d x^d is a numpy int64 array
``[a_0, ..., a_d]`` with a nonzero last entry; the zero polynomial is the
empty array.  Every function takes the prime ``p`` explicitly.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ZeroPolynomial


def poly(coeffs, p: int) -> np.ndarray:
    a = np.asarray(coeffs, dtype=np.int64) % p
    return trim(a)


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def deg(a: np.ndarray) -> int:
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % p)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % p)


def mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return trim(np.convolve(a, b) % p)


def scale(a, c, p):
    return trim((a * c) % p)


def monic(a, p):
    if len(a) == 0:
        return a
    return scale(a, pow(int(a[-1]), -1, p), p)


def divmod_(a, b, p):
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = a.copy()
    db = len(b) - 1
    inv_lead = pow(int(b[-1]), -1, p)
    if len(a) <= db:
        return a[:0], trim(a)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - 1, db - 1, -1):
        c = (a[i] * inv_lead) % p
        if c:
            q[i - db] = c
            a[i - db: i + 1] = (a[i - db: i + 1] - c * b) % p
    return trim(q), trim(a[:db])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    """Monic gcd (the zero polynomial when both inputs are zero)."""
    a, b = trim(a % p), trim(b % p)
    while len(b):
        a, b = b, mod(a, b, p)
    return monic(a, p)


def deriv(a, p):
    if len(a) <= 1:
        return a[:0]
    return trim((a[1:] * np.arange(1, len(a))) % p)


def squarefree(f, p) -> bool:
    """True when gcd(f, f') is a nonzero constant."""
    f = trim(np.asarray(f, dtype=np.int64) % p)
    if len(f) == 0:
        raise ZeroPolynomial("squarefree test of the zero polynomial")
    return deg(gcd(f, deriv(f, p), p)) == 0


def evaluate(a, x, p) -> int:
    acc = 0
    for c in reversed(a.tolist()):
        acc = (acc * x + c) % p
    return acc


class Reducer:
    """Fast multiplication modulo a fixed monic polynomial ``f``.

    Residues are dense length-``deg f`` arrays (not trimmed).
    """

    def __init__(self, f, p: int):
        f = trim(np.asarray(f, dtype=np.int64) % p)
        if len(f) < 2 or f[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.f = f
        self.p = p
        self.n = n = len(f) - 1
        # rows: x^(n+i) mod f for i = 0 .. n-1
        rows = np.zeros((n, n), dtype=np.int64)
        cur = (-f[:n]) % p
        for i in range(n):
            rows[i] = cur
            lead = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            cur = (cur - lead * f[:n]) % p
        self._rows = rows

    def reduce(self, c: np.ndarray) -> np.ndarray:
        n, p = self.n, self.p
        c = np.asarray(c, dtype=np.int64) % p
        if len(c) <= n:
            out = np.zeros(n, dtype=np.int64)
            out[: len(c)] = c
            return out
        high = c[n:]
        if len(high) > n:
            out = np.zeros(n, dtype=np.int64)
            r = mod(trim(c), self.f, p)
            out[: len(r)] = r
            return out
        out = c[:n] + high @ self._rows[: len(high)]
        return out % p

    def mulmod(self, a, b) -> np.ndarray:
        return self.reduce(np.convolve(a, b))

    def powmod(self, a, e: int) -> np.ndarray:
        result = np.zeros(self.n, dtype=np.int64)
        result[0] = 1
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result

    def x(self) -> np.ndarray:
        return self.reduce(np.array([0, 1], dtype=np.int64))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    f = trim(np.asarray(f, dtype=np.int64) % p)
    n = deg(f)
    if n < 1:
        return False
    f = monic(f, p)
    if n == 1:
        return True
    if f[0] == 0:
        return False
    red = Reducer(f, p)
    x = red.x()
    xp = x
    for _ in range(n // 2):
        xp = red.powmod(xp, p)
        if deg(gcd(trim((xp - x) % p), f, p)) > 0:
            return False
    return True


def find_irreducible(p: int, n: int) -> np.ndarray:
    """Lexicographically smallest monic irreducible of degree n.

    Coefficient tuples (c_0, ..., c_{n-1}) are compared lexicographically,
    low degree first.
    """
    if n == 1:
        return np.array([0, 1], dtype=np.int64)
    # beyond degree 1 a zero constant term means x divides f: skip that block
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=n - 1):
            f = np.array((c0,) + rest + (1,), dtype=np.int64)
            if is_irreducible(f, p):
                return f
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


def cyclotomic(n: int, p: int) -> np.ndarray:
    """The n-th cyclotomic polynomial reduced mod p.

    Uses the divisor-product recursion over the integers, then reduces.
    """
    cache: dict[int, list[int]] = {}

    def over_z(k: int) -> list[int]:
        if k in cache:
            return cache[k]
        num = [-1] + [0] * (k - 1) + [1]  # x^k - 1
        for d in range(1, k):
            if k % d == 0:
                num = _zdiv(num, over_z(d))
        cache[k] = num
        return num

    return poly(over_z(n), p)


def _zdiv(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials, b monic
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "inexact cyclotomic division"
    return q
