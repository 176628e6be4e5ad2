import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from threeorbit import polyfp
from threeorbit.errors import FieldMismatch, NotPrime, ReducibleModulus
from threeorbit.ffield import (
    FieldElem,
    ff_as_vector,
    ff_frobenius,
    ff_from_vector,
    ff_make,
    ff_trace,
    prime_power,
)

F81_MODULUS = [2, 0, 0, 2, 1]  # lam^4 - lam^3 - 1


@pytest.fixture(scope="module")
def f81():
    return ff_make(3, 4, F81_MODULUS)


@pytest.fixture(scope="module")
def f4():
    return ff_make(2, 2, [1, 1, 1])


def test_f81_root_is_primitive(f81):
    lam = f81.elem(f81.lam)
    assert lam.coeffs == (0, 1, 0, 0)
    assert lam.order() == 80


def test_prime_field_f2():
    F = ff_make(2, 1)
    assert F.q == 2 and F.lam == 1


def test_f4_generator_order(f4):
    t = FieldElem(f4, f4.from_vec([0, 1]))
    assert t.order() == 3
    assert sorted(x.order() for x in f4.elements() if x) == [1, 3, 3]


def test_f4_t_squared(f4):
    t = ff_from_vector(f4, [0, 1])
    assert ff_as_vector(t * t) == (1, 1)
    assert ff_as_vector(ff_frobenius(t, 1)) == (1, 1)
    assert ff_as_vector(ff_trace(t, 1)) == (1, 0)


def test_f81_modulus_relation(f81):
    lam = ff_from_vector(f81, [0, 1, 0, 0])
    assert ff_as_vector(lam ** 4) == (1, 0, 0, 1)


def test_inverses_in_f9():
    F = ff_make(3, 2)
    for x in F.elements():
        if x:
            assert (x * x.inv()).code == 1


def test_frobenius_fixes_prime_field(f81):
    for c in range(3):
        x = f81.elem(c)
        assert ff_frobenius(x, 1) == x


def test_trace_kernel_size_f81_over_f9(f81):
    kernel = [x for x in f81.elements() if ff_trace(x, 2).code == 0]
    assert len(kernel) == 9


def test_vector_round_trip_f81(f81):
    assert ff_as_vector(f81.zero) == (0, 0, 0, 0)
    for x in f81.elements():
        assert ff_from_vector(f81, ff_as_vector(x)) == x


def test_mixing_fields_raises(f81):
    F9 = ff_make(3, 2)
    with pytest.raises(FieldMismatch):
        f81.one + F9.one


def test_bad_inputs():
    with pytest.raises(NotPrime):
        ff_make(4, 1)
    with pytest.raises(ReducibleModulus):
        ff_make(3, 2, [0, 0, 1])  # x^2
    assert prime_power(81) == (3, 4)
    assert prime_power(10) is None


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 2), (3, 4), (5, 2), (7, 2), (2, 8)])
def test_multiplicative_group_cyclic(p, n):
    F = ff_make(p, n)
    lam = F.elem(F.lam)
    assert lam.order() == p ** n - 1
    powers = {F.pow(F.lam, k) for k in range(p ** n - 1)}
    assert len(powers) == p ** n - 1


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (3, 6), (5, 3), (2, 8)])
def test_lex_first_irreducible_matches_sympy(p, n):
    f = polyfp.find_irreducible(p, n)
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed([int(c) for c in f])), x, modulus=p)
    assert poly.is_irreducible
    # every lex-smaller monic candidate with nonzero constant term is reducible
    for c0 in range(1, int(f[0]) + 1):
        for rest in itertools.product(range(p), repeat=n - 1):
            g = (c0,) + rest + (1,)
            if g == tuple(int(c) for c in f):
                return
            cand = sympy.Poly(list(reversed(g)), x, modulus=p)
            assert not cand.is_irreducible


def test_large_irreducible_degree_124():
    f = polyfp.find_irreducible(5, 124)
    assert len(f) == 125 and f[-1] == 1
    assert polyfp.is_irreducible(f, 5)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(0, 80), b=st.integers(0, 80), c=st.integers(0, 80))
def test_field_axioms_f81(a, b, c):
    F = ff_make(3, 4, F81_MODULUS)
    x, y, z = F.elem(a), F.elem(b), F.elem(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert ff_trace(x + y, 2) == ff_trace(x, 2) + ff_trace(y, 2)
    assert ff_frobenius(ff_frobenius(x, 1), 3) == x
    assert ff_frobenius(x * y, 1) == ff_frobenius(x, 1) * ff_frobenius(y, 1)


@settings(max_examples=40, deadline=None)
@given(a=st.integers(1, 728), b=st.integers(0, 728))
def test_mul_matrix_is_multiplication(a, b):
    F = ff_make(3, 6)
    M = F.mul_matrix(a)
    assert np.array_equal((M @ F.to_vec(b)) % 3, F.to_vec(F.mul(a, b)))
