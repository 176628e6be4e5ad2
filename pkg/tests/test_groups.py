import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeorbit.errors import EvenCharacteristic, NotPrimitiveDivisor, NotSpecialQuotient, TooLarge, UnknownFamily, WNotProper
from threeorbit.ffield import ff_make
from threeorbit.fplinalg import Subspace, enumerate_subspaces, rank
from threeorbit.groups import (
    TableGroup,
    central_product,
    central_quotient,
    cyclic_group,
    dihedral_group,
    mk_extraspecial_q,
    mk_heisenberg_q,
    mk_heisenberg_quotient,
    mk_homocyclic,
    mk_p_epsilon,
    mk_pq_frobenius,
    mk_pres_3_10,
    mk_su3_sylow,
    mk_suzuki_A,
    quaternion_group,
    to_table,
)
from threeorbit.groups import io as gio
from threeorbit.groups.registry import build_group, field_for
from threeorbit.groups.symplectic import standardization, symplectic_standardize

F3, F9 = ff_make(3, 1), ff_make(3, 2)
U1 = [[1, 0, 1, 0], [0, 2, 1, 2]]


def mat3_mul(ctx, A, B):
    """3x3 matrix product over F_q on field codes (independent oracle)."""
    C = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                acc = ctx.add(acc, ctx.mul(A[i][k], B[k][j]))
            C[i][j] = acc
    return C


def test_commutator_of_E_and_F_is_Z():
    N = mk_heisenberg_q(F3)
    for a in range(1, 3):
        for b in range(1, 3):
            c = N.g_comm(N.elem([a, 0], [0]), N.elem([0, b], [0]))
            assert c.v == (0, 0) and c.z == ((a * b) % 3,)


@pytest.mark.parametrize("N", [mk_heisenberg_q(F9), mk_extraspecial_q(F3, 2), mk_heisenberg_quotient(3, 3),
                               mk_suzuki_A(ff_make(3, 6), 2), mk_pres_3_10()])
def test_odd_families_have_exponent_p(N):
    X = np.random.default_rng(0).integers(0, N.p, (300, N.n + N.m))
    assert not N.pow_rows(X, N.p).any()


def test_su3_q2_is_quaternion():
    N = mk_su3_sylow(ff_make(2, 1))
    orders = sorted(N.g_order(N.elem(v[:N.n], v[N.n:])) for v in N.elements())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert to_table(N).order_profile() == quaternion_group().order_profile()


def test_heisenberg_quotient_small_cases():
    N = mk_heisenberg_quotient(2, 3)
    assert N.order == 27 and N.center_order() == 3
    assert N.same_table(mk_heisenberg_q(F3))
    H = mk_heisenberg_quotient(3, 3)
    assert H.order == 3 ** 6 and H.center_order() == 27
    with pytest.raises(WNotProper):
        mk_heisenberg_quotient(2, 3, Subspace.full(1, 3))


def test_heisenberg_q_orders():
    N3 = mk_heisenberg_q(F3)
    assert (N3.order, N3.center_order()) == (27, 3)
    N9 = mk_heisenberg_q(F9)
    assert (N9.order, N9.center_order()) == (729, 9)


@settings(max_examples=40, deadline=None)
@given(a=st.integers(0, 8), b=st.integers(0, 8), z=st.integers(0, 8), a2=st.integers(0, 8), b2=st.integers(0, 8),
       z2=st.integers(0, 8))
def test_heisenberg_q_matches_unitriangular_matrices(a, b, z, a2, b2, z2):
    F, N = F9, mk_heisenberg_q(F9)
    A = [[1, a, z], [0, 1, b], [0, 0, 1]]
    B = [[1, a2, z2], [0, 1, b2], [0, 0, 1]]
    C = mat3_mul(F, A, B)
    row = lambda x, y, w: np.concatenate([F.to_vec(x), F.to_vec(y), F.to_vec(w)])  # noqa: E731
    got = N.mul_rows(row(a, b, z)[None], row(a2, b2, z2)[None])[0]
    assert np.array_equal(got, row(C[0][1], C[1][2], C[0][2]))


def test_extraspecial_shapes():
    N = mk_extraspecial_q(F3, 2)
    assert (N.order, N.center_order()) == (243, 3)
    assert mk_extraspecial_q(F9, 1).same_table(mk_heisenberg_q(F9))
    # commutator form is the standard hyperbolic form
    C = mk_extraspecial_q(F3, 2).comm_tensor[:, :, 0]
    J = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [2, 0, 0, 0], [0, 2, 0, 0]])
    assert np.array_equal(C % 3, J)
    assert rank(C, 3) == 4
    with pytest.raises(EvenCharacteristic):
        mk_extraspecial_q(ff_make(2, 2), 1)


def test_central_product_of_two_heisenbergs():
    H = mk_heisenberg_q(F3)
    P = central_product(H, H)
    assert P.order == H.order * H.order // 3
    assert P.center_order() == 3 and P.radical().dim == 0
    _, canon = symplectic_standardize(P)
    assert canon.same_table(mk_extraspecial_q(F3, 2))


def test_suzuki_small_orders():
    N = mk_suzuki_A(ff_make(2, 3), 1)
    assert N.order == 64
    orders = N.order_rows(N.elements())
    central = ~N.elements()[:, :N.n].any(axis=1)
    assert (orders[~central] == 4).all()
    assert sorted(orders[central]) == [1] + [2] * 7


def test_suzuki_beta_definition():
    F = ff_make(3, 3)
    N = mk_suzuki_A(F, 1)
    for x in range(1, 27, 5):
        for y in range(1, 27, 7):
            expect = F.to_vec(F.mul(x, F.pow(y, 3)))
            assert np.array_equal(N.beta_form(F.to_vec(x), F.to_vec(y)), expect)


@settings(max_examples=100, deadline=None)
@given(a=st.integers(0, 728), b=st.integers(0, 728), a2=st.integers(0, 728), b2=st.integers(0, 728))
def test_suzuki_matches_matrix_model(a, b, a2, b2):
    F, e = ff_make(3, 6), 2
    N = mk_suzuki_A(F, e)
    M = lambda x, y: [[1, x, y], [0, 1, F.frob(x, e)], [0, 0, 1]]  # noqa: E731
    C = mat3_mul(F, M(a, b), M(a2, b2))
    got = N.mul_rows(np.concatenate([F.to_vec(a), F.to_vec(b)])[None],
                     np.concatenate([F.to_vec(a2), F.to_vec(b2)])[None])[0]
    assert np.array_equal(got, np.concatenate([F.to_vec(C[0][1]), F.to_vec(C[0][2])]))
    assert C[1][2] == F.frob(C[0][1], e)


def test_su3_sizes():
    N4 = mk_su3_sylow(ff_make(2, 2))
    assert (N4.order, N4.center_order()) == (64, 4)
    N3 = mk_su3_sylow(F3)
    assert N3.order == 27
    _, canon = symplectic_standardize(N3)
    assert canon.same_table(mk_heisenberg_q(F3))


def test_p_epsilon_relations():
    N = mk_p_epsilon()
    assert (N.order, N.center_order()) == (512, 8)
    e = np.eye(6, dtype=np.int64)
    x = [N.elem(e[i], [0, 0, 0]) for i in range(6)]
    sq = N.g_pow(x[0], 2)
    assert sq.v == (0,) * 6 and sq.z == (0, 1, 0)  # x1^2 = z2
    assert N.g_pow(x[2], 2).z == (0, 1, 0)  # x3^2 = z2
    c = N.g_comm(x[0], x[5])
    assert c.v == (0,) * 6 and c.z == (0, 0, 0)  # [x1, x6] = 1


def test_pq_frobenius_tables():
    A4 = mk_pq_frobenius(2, 3, 1)
    assert A4.order == 12 and A4.order_profile() == {1: 1, 2: 3, 3: 8}
    S3 = mk_pq_frobenius(3, 2, 1)
    assert S3.order == 6 and S3.order_profile() == {1: 1, 2: 3, 3: 2}
    G = mk_pq_frobenius(3, 5, 1)
    assert G.order == 405
    assert all(G.is_automorphism(g) for g in G.aut_gens)
    with pytest.raises(NotPrimitiveDivisor):
        mk_pq_frobenius(2, 7, 1)


def test_homocyclic_tables():
    assert mk_homocyclic(2, 1).order_profile() == cyclic_group(4).order_profile()
    assert mk_homocyclic(3, 1).order_profile() == cyclic_group(9).order_profile()
    T = mk_homocyclic(3, 2)
    assert T.order == 81 and max(T.order_profile()) == 9
    assert all(T.is_automorphism(g) for g in T.aut_gens)


def test_central_quotients():
    N9 = mk_extraspecial_q(F9, 1)
    for U in enumerate_subspaces(2, 3, 1):
        Q = central_quotient(N9, U)
        assert (Q.order, Q.center_order()) == (243, 3)
    same = central_quotient(N9, Subspace.zero(2, 3))
    assert np.array_equal(same.beta, N9.beta)
    N81 = mk_heisenberg_q(field_for(3, 4))
    Q = central_quotient(N81, Subspace.from_gens(U1, 4, 3))
    assert (Q.order, Q.center_order()) == (3 ** 10, 9)
    assert Q.same_table(mk_pres_3_10())


def test_degenerate_quotient_rejected():
    H = mk_heisenberg_quotient(3, 3)
    # killing e1^e2 and e1^e3 leaves e1 in the radical
    W = Subspace.from_gens([[1, 0, 0], [0, 1, 0]], 3, 3)
    with pytest.raises(NotSpecialQuotient):
        central_quotient(H, W)


def test_standardization_of_standard_group():
    N = mk_heisenberg_q(F3)
    T, canon = symplectic_standardize(N)
    assert canon.same_table(N)
    assert sorted(np.abs(T).sum(axis=0).tolist()) == [1, 1]  # a basis permutation up to sign
    s = standardization(central_quotient(mk_extraspecial_q(F9, 1), Subspace.from_gens([[1, 1]], 2, 3)))
    assert s.verify()


@pytest.mark.parametrize("N", [mk_heisenberg_q(F3), mk_su3_sylow(ff_make(2, 2)), mk_suzuki_A(ff_make(2, 3), 1),
                               mk_heisenberg_q(F9)])
def test_table_orders_agree_with_group_orders(N):
    T = to_table(N)
    E = N.elements()
    assert np.array_equal(T.element_orders, N.order_rows(E))
    assert T.is_group()


def test_table_cap():
    with pytest.raises(TooLarge):
        to_table(mk_p_epsilon().__class__(3, 8, 2, np.zeros((8, 8, 2), dtype=np.int64), {}))


def test_file_round_trip(tmp_path):
    for G in [mk_extraspecial_q(F9, 1), mk_pq_frobenius(2, 3, 1), dihedral_group(4)]:
        path = tmp_path / "g.json"
        gio.save(G, path)
        H = gio.load(path)
        assert gio.dumps(H) == gio.dumps(G)
        if isinstance(G, TableGroup):
            assert np.array_equal(H.table, G.table)
        else:
            assert H.same_table(G)


def test_registry():
    G = build_group("extraspecial_q", {"q": 9, "m": 1})
    assert (G.p, G.n, G.m) == (3, 4, 2)
    assert build_group("p_epsilon").order == 512
    Q = build_group("central_quotient", {"parent": {"name": "heisenberg_q", "params": {"q": 81}}, "U": U1})
    assert Q.same_table(mk_pres_3_10())
    with pytest.raises(UnknownFamily):
        build_group("nope", {})


@pytest.mark.parametrize("N", [mk_heisenberg_q(F9), mk_suzuki_A(ff_make(2, 3), 1), mk_su3_sylow(ff_make(2, 2)),
                               mk_p_epsilon(), mk_pres_3_10()])
def test_associative_and_special(N):
    assert N.check_associative(3000)
    assert N.is_special()
