import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeorbit.autos.exhibited import exhibited_gens, general_linear_generators, symplectic_generators
from threeorbit.autos.lifting import AutoPair, CentralMap, certify_pair, element_action, identity_pair, lift_check
from threeorbit.autos.oracle import ORACLE_CAP, generic_aut_orbits, generic_aut_search, holomorph_rank
from threeorbit.autos.orbits import homocyclic_orbits, orbit_count_special, orbit_partition_elements, table_orbits
from threeorbit.autos.search import is_group_closed, stabilizer_search
from threeorbit.autos.verdict import is_3orbit
from threeorbit.errors import LiftFailure, TooLarge
from threeorbit.ffield import ff_make
from threeorbit.fplinalg import mat_mul, mat_order
from threeorbit.groups import (
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

F3, F9 = ff_make(3, 1), ff_make(3, 2)


def brute_force_aut_orbits(T):
    """Independent oracle: Aut(T) by trying every image of a 2-element generating set."""
    n = T.order
    tab = T.table

    def closure(gens):
        seen = {T.identity}
        frontier = [T.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = int(tab[x, g])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    a, b = next((a, b) for a in range(n) for b in range(n) if len(closure([a, b])) == n)
    orders = T.element_orders
    perms = []
    for x, y in itertools.product(range(n), repeat=2):
        if orders[x] != orders[a] or orders[y] != orders[b]:
            continue
        phi = {T.identity: T.identity}
        frontier = [T.identity]
        ok = True
        while frontier and ok:
            u = frontier.pop()
            for g, img in ((a, x), (b, y)):
                v, w = int(tab[u, g]), int(tab[phi[u], img])
                if v in phi:
                    ok &= phi[v] == w
                else:
                    phi[v] = w
                    frontier.append(v)
        if not ok or len(set(phi.values())) != n:
            continue
        P = np.array([phi[i] for i in range(n)])
        if np.array_equal(P[tab], tab[P][:, P]):
            perms.append(P)
    # union of the images of each element
    orbits = {frozenset(int(P[i]) for P in perms) for i in range(n)}
    return sorted(len(o) for o in orbits), len(perms)


# --- lifting ----------------------------------------------------------------------

def test_scalar_lifts_to_square():
    N = mk_heisenberg_q(F9)
    mu = F9.pow(F9.lam, 3)
    M = F9.mul_matrix(mu)
    g = np.block([[M, np.zeros_like(M)], [np.zeros_like(M), M]])
    pair = lift_check(N, g)
    assert np.array_equal(pair.h, F9.mul_matrix(F9.mul(mu, mu)))


def test_symplectic_generators_lift_with_identity_on_centre():
    N = mk_extraspecial_q(F3, 2)
    for label, g in symplectic_generators(F3, 2):
        pair = lift_check(N, g)
        assert pair is not None and np.array_equal(pair.h, np.eye(1, dtype=np.int64)), label


def test_non_similitude_does_not_lift():
    N = mk_extraspecial_q(F3, 2)
    g = np.eye(4, dtype=np.int64)
    g[0, 1] = 1  # a_0 += a_1 without the compensating b change
    assert lift_check(N, g) is None


def test_identity_pair_acts_trivially():
    N = mk_heisenberg_q(F3)
    E = N.elements()
    assert np.array_equal(element_action(N, identity_pair(N), None, E), E)


def test_central_automorphisms_fix_v_parts():
    N = mk_heisenberg_q(F3)
    E = N.elements()
    K = CentralMap(np.array([[1, 0]]))
    img = element_action(N, identity_pair(N), K, E)
    assert np.array_equal(img[:, :2], E[:, :2])
    assert not np.array_equal(img, E)
    assert certify_pair(N, identity_pair(N), kappa=K)


def test_xi_on_suzuki_2_group():
    N = mk_suzuki_A(ff_make(2, 3), 1)
    xi = [a for a in exhibited_gens(N) if a.label.startswith("xi")]
    rv, rm, r = orbit_count_special(N, xi)
    assert rv.sizes == [1, 7] and rm.sizes == [1, 7] and r == 3
    assert certify_pair(N, xi[0], samples=500)


@settings(max_examples=25, deadline=None)
@given(k=st.integers(0, 7), seed=st.integers(0, 10 ** 6))
def test_lifted_pairs_are_homomorphisms(k, seed):
    N = mk_heisenberg_q(F9)
    pairs = exhibited_gens(N)
    a = pairs[seed % len(pairs)]
    for j in range(k):
        a = a.compose(pairs[(seed + j) % len(pairs)], 3)
    assert certify_pair(N, a, samples=50, seed=seed)


# --- orbit formula -------------------------------------------------------------------

@pytest.fixture(scope="module")
def gl23_pairs():
    return stabilizer_search(mk_heisenberg_q(F3), "full_enumerate")


def test_full_enumeration_is_gl23(gl23_pairs):
    assert len(gl23_pairs) == 48
    assert is_group_closed(gl23_pairs, 3)
    assert orbit_count_special(mk_heisenberg_q(F3), gl23_pairs)[2] == 3


def test_element_orbits_of_3_1_2(gl23_pairs):
    N = mk_heisenberg_q(F3)
    rep = orbit_partition_elements(N, gl23_pairs, include_K=True)
    assert rep.sizes == [1, 2, 24]
    assert orbit_partition_elements(N, [], include_K=False).sizes == [1] * 27


def test_sp_alone_misses_the_centre():
    N = mk_extraspecial_q(F3, 2)
    sp = [lift_check(N, g, label=lab) for lab, g in symplectic_generators(F3, 2)]
    rv, rm, r = orbit_count_special(N, sp)
    assert (rv.count, rm.count, r) == (2, 3, 4)


def test_scaler_is_regular_on_centre_of_9_1_2():
    N = mk_heisenberg_q(F9)
    scaler = next(a for a in exhibited_gens(N) if a.label == "gammaL:k=1,i=0")
    assert np.array_equal(scaler.h, F9.mul_matrix(F9.lam))
    assert orbit_count_special(N, [scaler])[1].sizes == [1, 8]


def test_p_epsilon_search_finds_orders():
    N = mk_p_epsilon()
    found = stabilizer_search(N, "find_orders", orders=[7, 9])
    orders = {mat_order(a.g, 2) for a in found}
    assert {7, 9} <= orders
    wit = stabilizer_search(N, "transitive_witness")
    rv, rm, r = orbit_count_special(N, wit)
    assert rv.sizes == [1, 63] and rm.sizes == [1, 7] and r == 3


# --- oracle -------------------------------------------------------------------------

def test_z4_orbits():
    rep = generic_aut_orbits(cyclic_group(4))
    assert rep.count == 3
    assert sorted(map(sorted, _orbit_sets(rep))) == [[0], [1, 3], [2]]


def _orbit_sets(rep):
    lab = rep.labels
    return [np.flatnonzero(lab == c).tolist() for c in np.unique(lab)]


@pytest.mark.parametrize("T,count", [(quaternion_group(), 3), (to_table(mk_su3_sylow(ff_make(2, 1))), 3),
                                     (dihedral_group(4), 4), (cyclic_group(9), 3), (cyclic_group(8), 4)])
def test_oracle_small_groups(T, count):
    assert generic_aut_orbits(T).count == count


@pytest.mark.parametrize("T", [cyclic_group(4), cyclic_group(9), quaternion_group(), dihedral_group(4),
                               mk_pq_frobenius(2, 3, 1), mk_pq_frobenius(3, 2, 1), to_table(mk_heisenberg_q(F3)),
                               mk_homocyclic(2, 2)])
def test_oracle_against_brute_force(T):
    sizes, n_aut = brute_force_aut_orbits(T)
    assert generic_aut_orbits(T).sizes == sizes


def test_brute_force_aut_counts():
    # frozen: |Aut(Q8)| = 24, |Aut(D4)| = 8, |Aut(A4)| = 24, |Aut(3^{1+2})| = 432
    assert brute_force_aut_orbits(quaternion_group())[1] == 24
    assert brute_force_aut_orbits(dihedral_group(4))[1] == 8
    assert brute_force_aut_orbits(mk_pq_frobenius(2, 3, 1))[1] == 24
    assert brute_force_aut_orbits(to_table(mk_heisenberg_q(F3)))[1] == 432


def test_oracle_cap():
    with pytest.raises(TooLarge):
        generic_aut_orbits(cyclic_group(ORACLE_CAP + 1))


@pytest.mark.parametrize("T,rank", [(cyclic_group(4), 3), (mk_pq_frobenius(2, 3, 1), 3), (dihedral_group(4), 4),
                                    (mk_pq_frobenius(3, 2, 1), 3)])
def test_holomorph_rank(T, rank):
    res = generic_aut_search(T)
    assert holomorph_rank(T, res.aut_perms, res.generators) == rank


@pytest.mark.parametrize("p,n,sizes", [(3, 1, [1, 2, 6]), (2, 2, [1, 3, 12]), (3, 2, [1, 8, 72])])
def test_homocyclic_orbits(p, n, sizes):
    rep = homocyclic_orbits(p, n)
    assert rep.count == 3 and rep.sizes == sizes


# --- structured vs element-level vs oracle -----------------------------------------------

@pytest.mark.parametrize("N", [mk_heisenberg_q(F3), mk_extraspecial_q(F3, 2), mk_suzuki_A(ff_make(2, 3), 1),
                               mk_su3_sylow(ff_make(2, 1)), mk_su3_sylow(F3), mk_su3_sylow(ff_make(2, 2)),
                               mk_heisenberg_q(F9), mk_heisenberg_quotient(3, 3)], ids=lambda N: repr(N))
def test_three_paths_agree(N):
    pairs = exhibited_gens(N)
    r = orbit_count_special(N, pairs)[2]
    elem = orbit_partition_elements(N, pairs).count
    oracle = generic_aut_orbits(to_table(N)).count
    assert r == elem == oracle == 3


def test_pq_frobenius_405_exhibited():
    G = mk_pq_frobenius(3, 5, 1)
    assert table_orbits(G.order, G.aut_gens, "exhibited").count == 3


# --- exhibited generators and verdicts -----------------------------------------------------

def test_suzuki_odd_theta_of_order_three_lifts_both_ways():
    for e in (2, 4):
        N = mk_suzuki_A(ff_make(3, 6), e)
        rv, rm, r = orbit_count_special(N, exhibited_gens(N))
        assert rv.sizes == [1, 728] and rm.sizes == [1, 728] and r == 3


def test_gl3_2_does_not_lift_to_suzuki_2_group():
    N = mk_suzuki_A(ff_make(2, 3), 1)
    gens = dict(general_linear_generators(3, 2))
    assert lift_check(N, gens["gl:transvection"]) is None


def test_lift_failure_reports_generator():
    from threeorbit.autos.exhibited import _lift_all

    N = mk_extraspecial_q(F3, 2)
    bad = np.eye(4, dtype=np.int64)
    bad[0, 1] = 1
    with pytest.raises(LiftFailure) as info:
        _lift_all(N, symplectic_generators(F3, 2)[:2] + [("bad", bad)])
    assert info.value.generator == "bad"
    # the same matrix on the free class-2 group always lifts
    H = mk_heisenberg_quotient(3, 3)
    assert lift_check(H, bad[:3, :3]) is not None


def test_verdicts():
    assert is_3orbit(dihedral_group(4), "oracle").is3 is False
    assert is_3orbit(dihedral_group(4), "exhibited").is3 is False
    assert is_3orbit(mk_heisenberg_quotient(3, 3)).is3 is True
    assert is_3orbit(mk_pres_3_10()).is3 is True
    assert is_3orbit(mk_p_epsilon()).is3 is None
    assert is_3orbit(mk_p_epsilon(), "exhibited_then_search").is3 is True
    assert is_3orbit(cyclic_group(4), "exhibited_then_search").is3 is True
    assert is_3orbit(mk_homocyclic(3, 2)).is3 is True
    assert is_3orbit(mk_pq_frobenius(3, 5, 1)).is3 is True
    with pytest.raises(TooLarge):
        is_3orbit(mk_pres_3_10(), "oracle")


def test_search_seed_changes_order_not_result(gl23_pairs):
    N = mk_heisenberg_q(F3)
    other = stabilizer_search(N, "full_enumerate", seed=7)
    assert {a.key() for a in other} == {a.key() for a in gl23_pairs}
    a, b = gl23_pairs[5], gl23_pairs[11]
    c = a.compose(b, 3)
    assert np.array_equal(c.g, mat_mul(a.g, b.g, 3))
    assert isinstance(c, AutoPair)
