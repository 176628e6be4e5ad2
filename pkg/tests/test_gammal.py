import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeorbit.errors import FieldMismatch, PreconditionFailed
from threeorbit.ffield import FieldElem, ff_make
from threeorbit.fplinalg import Subspace, enumerate_subspaces, mat_mul, mat_order
from threeorbit.gammal import (
    admissible_scan,
    contains_subfield_hyperplane,
    dual_scalar_power,
    example55_certificate,
    example55_subspace,
    gl1_apply,
    gl1_compose,
    gl1_elem,
    gl1_elements,
    gl1_inverse,
    gl1_matrix,
    gl1_order,
    gl1_subspace_orbit,
    gl1_subspace_stabilizer,
    gl1_x,
    gl1_y,
    hyperplane_orbit,
    is_closed,
    is_subfield_hyperplane,
    linear_field,
    quotient_image,
    quotient_transitive,
    subfield_hyperplanes,
    trace_hyperplane,
)

F81 = ff_make(3, 4, [2, 0, 0, 2, 1])
U1 = Subspace.from_gens([[1, 0, 1, 0], [0, 2, 1, 2]], 4, 3)
U2 = Subspace.from_gens([[2, 1, 0, 0], [1, 1, 1, 0]], 4, 3)


def test_identity_and_generator_orders():
    e = gl1_elem(F81)
    assert all(gl1_apply(e, a) == a for a in F81.elements())
    assert gl1_order(gl1_x(F81)) == 80
    assert gl1_order(gl1_y(F81)) == 4
    assert len(gl1_elements(F81)) == 320


@settings(max_examples=60, deadline=None)
@given(k1=st.integers(0, 79), i1=st.integers(0, 3), k2=st.integers(0, 79), i2=st.integers(0, 3), a=st.integers(0, 80))
def test_compose_is_apply_then_apply(k1, i1, k2, i2, a):
    e, f = gl1_elem(F81, k1, i1), gl1_elem(F81, k2, i2)
    x = FieldElem(F81, a)
    assert gl1_apply(gl1_compose(e, f), x) == gl1_apply(f, gl1_apply(e, x))
    assert gl1_apply(gl1_inverse(e), gl1_apply(e, x)) == x
    assert np.array_equal(gl1_matrix(gl1_compose(e, f)), mat_mul(gl1_matrix(f), gl1_matrix(e), 3))


def test_y_then_x():
    comp = gl1_compose(gl1_y(F81), gl1_x(F81))
    lam = FieldElem(F81, F81.lam)
    for a in F81.elements():
        assert gl1_apply(comp, a) == lam * a ** 3


def test_apply_in_wrong_field():
    with pytest.raises(FieldMismatch):
        gl1_apply(gl1_x(F81), ff_make(3, 2).one)


def test_stabilizers():
    assert len(gl1_subspace_stabilizer(Subspace.zero(4, 3), F81)) == 320
    stab = gl1_subspace_stabilizer(U1, F81)
    assert is_closed(stab)
    img = quotient_image(U1, F81, stab)
    assert len(img) == 8
    # cyclic: some image element has order 8 on the quotient
    assert max(mat_order(A, 3) for A in img) == 8
    assert len(quotient_image(trace_hyperplane(F81, 2), F81)) == 16


def test_subfield_hyperplane_predicates():
    for d in (1, 2):
        assert is_subfield_hyperplane(trace_hyperplane(F81, d), d, F81)
    assert not is_subfield_hyperplane(U1, 2, F81)
    assert all(is_subfield_hyperplane(H, 1, F81) for H in enumerate_subspaces(4, 3, 3))


def test_subfield_hyperplane_counts():
    hyp = subfield_hyperplanes(F81, 2)
    assert len(hyp) == 10
    assert set(hyp) == set(hyperplane_orbit(F81, 2))
    assert set(subfield_hyperplanes(F81, 1)) == set(enumerate_subspaces(4, 3, 3))
    F9 = ff_make(3, 2)
    assert [H.dim for H in subfield_hyperplanes(F9, 2)] == [0]


def test_contains_subfield_hyperplane():
    full = Subspace.full(4, 3)
    d, _ = contains_subfield_hyperplane(full, F81)
    assert d == 1
    assert contains_subfield_hyperplane(U1, F81) is None
    assert contains_subfield_hyperplane(U2, F81) is None
    T = trace_hyperplane(F81, 2)
    assert contains_subfield_hyperplane(T, F81) == (2, T)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_contains_agrees_with_enumeration(dim):
    """The submodule method against brute force over the listed subfield hyperplanes."""
    hyps = {d: subfield_hyperplanes(F81, d) for d in (1, 2)}
    for U in enumerate_subspaces(4, 3, dim):
        brute = next((d for d in (1, 2) if any(U.contains_subspace(H) for H in hyps[d])), None)
        got = contains_subfield_hyperplane(U, F81)
        assert (got[0] if got else None) == brute


@settings(max_examples=30, deadline=None)
@given(rows=st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=1, max_size=3))
def test_linear_model_agrees_with_log_tables(rows):
    U = Subspace.from_gens(rows, 4, 3)
    L = linear_field(3, 4, [2, 0, 0, 2, 1])
    a = contains_subfield_hyperplane(U, F81)
    b = contains_subfield_hyperplane(U, L)
    assert (a[0] if a else None) == (b[0] if b else None)


def test_linear_field_matches_field_ctx():
    L = linear_field(3, 4, [2, 0, 0, 2, 1])
    for code in (1, 3, 17, 80):
        v = F81.to_vec(code)
        assert np.array_equal(L.mul_matrix_vec(v), F81.mul_matrix(code))
    assert np.array_equal(L.frobenius_matrix(1), F81.frobenius_matrix(1))
    mu = L.subfield_generator(2)
    assert L.fixed_space(2).contains(mu) and not L.fixed_space(1).contains(mu)


def test_quotient_transitivity():
    assert quotient_transitive(U1, F81)
    assert quotient_transitive(Subspace.zero(4, 3), F81)
    assert not all(quotient_transitive(U, F81) for U in enumerate_subspaces(4, 3, 1))
    with pytest.raises(PreconditionFailed):
        quotient_transitive(Subspace.full(4, 3), F81)


@pytest.fixture(scope="module")
def census():
    return admissible_scan(F81, 2)


def test_census_cells(census):
    assert census["total"] == 130
    assert census["cells"] == {"hyperplane": 0, "admissible": 40, "both": 10, "neither": 80}
    W = {Subspace.from_gens(b, 4, 3) for b in census["witnesses"]}
    assert U1 in W and U2 in W
    assert W == set(gl1_subspace_orbit(U1, F81))


def test_census_independent_of_jobs(census):
    assert admissible_scan(F81, 2, jobs=3) == census


def test_other_censuses():
    c3 = admissible_scan(F81, 3)
    assert c3["cells"] == {"hyperplane": 0, "admissible": 0, "both": 40, "neither": 0}
    c9 = admissible_scan(ff_make(3, 2), 1)
    assert c9["witness_count"] == 0 and c9["total"] == 4


# --- the Frobenius block at (p, r) = (5, 3) -----------------------------------------

@pytest.fixture(scope="module")
def block():
    return example55_certificate(5, 3)


def test_block_structure(block):
    assert (block.n, block.R.dim, block.U.dim) == (124, 3, 121)
    assert block.order_on_R == 124 == 5 ** 3 - 1
    assert block.quotient_orbit == 124
    L = linear_field(5, 124)
    y = L.frobenius_matrix(1)
    assert block.R.is_invariant(y) and block.U.is_invariant(y)
    R, U = example55_subspace(5, 3)
    assert R == block.R and U == block.U


def test_block_contains_a_degree_31_subfield_hyperplane(block):
    """U is not hyperplane-free: y^31 acts on its trace-dual as the scalar 2."""
    d, W = block.subfield_hyperplane
    assert (d, W.dim) == (31, 93)
    assert block.U.contains_subspace(W)
    L = linear_field(5, 124)
    mu = L.subfield_generator(31)
    assert W.is_invariant(L.mul_matrix_vec(mu))
    assert dual_scalar_power(block) == 2


def test_block_preconditions():
    with pytest.raises(PreconditionFailed):
        example55_certificate(3, 2)
    with pytest.raises(PreconditionFailed):
        example55_certificate(7, 3)  # 3 divides 6
