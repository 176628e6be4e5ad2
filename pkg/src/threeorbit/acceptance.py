"""The fourteen acceptance checks, shared by ``threeorbit selftest`` and the test suite.

Each check returns a CheckResult; ``passed`` already includes the runtime limit.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .autos.exhibited import exhibited_gens
from .autos.lifting import lift_check
from .autos.oracle import generic_aut_orbits, generic_aut_search, holomorph_rank
from .autos.orbits import homocyclic_orbits, orbit_count_special, orbit_partition_elements, table_orbits
from .autos.search import stabilizer_search
from .autos.verdict import is_3orbit
from .exterior import singer_multiplicity_free_check
from .ffield import ff_make
from .fplinalg import Subspace, enumerate_subspaces
from .gammal import (
    admissible_scan,
    example55_certificate,
    gl1_subspace_orbit,
    hyperplane_orbit,
    quotient_image,
    subfield_hyperplanes,
)
from .groups import (
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
    to_table,
)
from .groups.families import P_EPSILON_COMMUTATORS, P_EPSILON_SQUARES, PRES_3_10_COMMUTATORS
from .groups.registry import field_for
from .groups.symplectic import symplectic_standardize

U1 = [[1, 0, 1, 0], [0, 2, 1, 2]]  # 1 + lam^2, 2 lam + lam^2 + 2 lam^3
U2 = [[2, 1, 0, 0], [1, 1, 1, 0]]  # 2 + lam, 1 + lam + lam^2


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    seconds: float
    limit: float | None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and (self.limit is None or self.seconds <= self.limit)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f"< {self.limit:g}s" if self.limit is not None else "no limit"
        note = "" if self.ok else f"  failed: {', '.join(k for k, v in self.details.items() if v is False)}"
        return f"[{status}] {self.number:2d}. {self.title} ({self.seconds:.2f}s, {lim}){note}"


def _run(number: int, title: str, limit, fn) -> CheckResult:
    t0 = time.perf_counter()
    details = fn()
    dt = time.perf_counter() - t0
    ok = all(v is not False for v in details.values())
    return CheckResult(number, title, ok, dt, limit, details)


def _profile(T) -> dict:
    return {int(k): int(v) for k, v in T.order_profile().items()}


def check_01() -> CheckResult:
    def body():
        d = {}
        d["Z4 oracle = 3"] = generic_aut_orbits(cyclic_group(4)).count == 3
        d["Z9 oracle = 3"] = generic_aut_orbits(cyclic_group(9)).count == 3
        for (p, n), sizes in {(3, 1): [1, 2, 6], (2, 2): [1, 3, 12], (3, 2): [1, 8, 72]}.items():
            rep = homocyclic_orbits(p, n)
            d[f"homocyclic({p},{n}) sizes {sizes}"] = rep.count == 3 and rep.sizes == sizes
        return d
    return _run(1, "abelian rows", 1.0, body)


def check_02() -> CheckResult:
    def body():
        d = {}
        A4 = mk_pq_frobenius(2, 3, 1)
        res = generic_aut_search(A4)
        d["A4 order profile"] = _profile(A4) == {1: 1, 2: 3, 3: 8}
        d["A4 oracle = 3"] = res.report.count == 3
        d["A4 holomorph rank = 3"] = holomorph_rank(A4, res.aut_perms, res.generators) == 3
        S3 = mk_pq_frobenius(3, 2, 1)
        res = generic_aut_search(S3)
        d["S3 order profile"] = _profile(S3) == {1: 1, 2: 3, 3: 2}
        d["S3 oracle = 3"] = res.report.count == 3
        d["S3 holomorph rank = 3"] = holomorph_rank(S3, res.aut_perms, res.generators) == 3
        G = mk_pq_frobenius(3, 5, 1)
        d["order 405"] = G.order == 405
        d["405 exhibited orbits = 3"] = table_orbits(G.order, G.aut_gens, "exhibited").count == 3
        return d
    return _run(2, "pq-Frobenius groups", 10.0, body)


def check_03() -> CheckResult:
    def body():
        d = {}
        N = mk_extraspecial_q(ff_make(3, 1), 1)
        pairs = stabilizer_search(N, "full_enumerate")
        d["3^{1+2}: 48 pairs"] = len(pairs) == 48
        d["3^{1+2}: r = 3"] = orbit_count_special(N, pairs)[2] == 3
        d["3^{1+2}: oracle = 3"] = generic_aut_orbits(to_table(N)).count == 3
        N5 = mk_extraspecial_q(ff_make(3, 1), 2)
        pairs5 = exhibited_gens(N5)
        d["3^{1+4}: exhibited r = 3"] = orbit_count_special(N5, pairs5)[2] == 3
        d["3^{1+4}: element orbits = 3"] = orbit_partition_elements(N5, pairs5).count == 3
        return d
    return _run(3, "extraspecial 3^{1+2}, 3^{1+4}", 30.0, body)


def check_04() -> CheckResult:
    def body():
        N = mk_suzuki_A(ff_make(2, 3), 1)
        xi = [a for a in exhibited_gens(N) if a.label.startswith("xi")]
        rv, rm, r = orbit_count_special(N, xi)
        return {
            "order 64": N.order == 64,
            "xi: o(V) = 2": rv.count == 2,
            "xi: o(M) = 2": rm.count == 2,
            "r = 3": r == 3,
            "oracle = 3": generic_aut_orbits(to_table(N)).count == 3,
        }
    return _run(4, "Suzuki A_2(3, x^2)", None, body)


def check_05() -> CheckResult:
    def body():
        d = {}
        Q = to_table(mk_su3_sylow(ff_make(2, 1)))
        d["SU(3,2) is Q8"] = _profile(Q) == {1: 1, 2: 1, 4: 6}
        d["SU(3,2) oracle = 3"] = generic_aut_orbits(Q).count == 3
        N4 = mk_su3_sylow(ff_make(2, 2))
        scaler = [a for a in exhibited_gens(N4) if a.label.startswith("scaler")]
        d["SU(3,4) order 64"] = N4.order == 64
        d["SU(3,4) scaler r = 3"] = orbit_count_special(N4, scaler)[2] == 3
        d["SU(3,4) oracle = 3"] = generic_aut_orbits(to_table(N4)).count == 3
        _, canon = symplectic_standardize(mk_su3_sylow(ff_make(3, 1)))
        d["SU(3,3) standardizes to 3^{1+2}"] = canon.same_table(mk_extraspecial_q(ff_make(3, 1), 1))
        d["D4 oracle = 4"] = generic_aut_orbits(dihedral_group(4)).count == 4
        return d
    return _run(5, "SU(3,q) Sylow subgroups and D4 control", None, body)


def _p_epsilon_relations(N) -> bool:
    """x_i^2 and [x_i, x_j] exactly as listed, over every ordered generator pair."""
    e = np.eye(N.n, dtype=np.int64)
    z = np.zeros(N.m, dtype=np.int64)

    def zv(idx):
        v = np.zeros(N.m, dtype=np.int64)
        for k in idx:
            v[k - 1] = 1
        return v

    X = [N.elem(e[i], z) for i in range(N.n)]
    for i, sq in P_EPSILON_SQUARES.items():
        s = N.g_pow(X[i - 1], 2)
        if any(s.v) or s.z != tuple(zv(sq)):
            return False
    for i in range(N.n):
        for j in range(N.n):
            if i == j:
                continue
            a, b = min(i, j) + 1, max(i, j) + 1
            c = N.g_comm(X[i], X[j])
            if any(c.v) or c.z != tuple(zv(P_EPSILON_COMMUTATORS.get((a, b), []))):
                return False
    # z_1, z_2, z_3 central of order 2, and every one of the 512 elements has x^4 = 1
    E = N.elements()
    return not N.pow_rows(E, 4).any() and N.center_order() == 8


def check_06() -> CheckResult:
    def body():
        d = {}
        N = mk_p_epsilon()
        d["listed relations"] = _p_epsilon_relations(N)
        T = to_table(N)
        d["table is a group"] = T.is_group()
        found = stabilizer_search(N, "find_orders", orders=[7, 9], budget=10 ** 8)
        orders = sorted({int(_order(a.g, 2)) for a in found})
        d["order-7 pair found"] = 7 in orders
        d["order-9 pair found"] = 9 in orders
        rv, rm, r = orbit_count_special(N, found)
        d["transitive on 63 nonzero V-vectors"] = rv.sizes == [1, 63]
        d["transitive on 7 nonzero M-vectors"] = rm.sizes == [1, 7]
        d["r = 3"] = r == 3
        d["oracle = 3"] = generic_aut_orbits(T).count == 3
        return d
    return _run(6, "P(eps), order 512", 600.0, body)


def _order(g, p):
    from .fplinalg import mat_order

    return mat_order(g, p)


def check_07() -> CheckResult:
    def body():
        N = mk_heisenberg_q(ff_make(3, 2))
        pairs = exhibited_gens(N)
        rv, rm, r = orbit_count_special(N, pairs)
        scaler = [a for a in pairs if a.label == "gammaL:k=1,i=0"]
        return {
            "order 729": N.order == 729,
            "r = 3": r == 3,
            "element orbits = 3": orbit_partition_elements(N, pairs).count == 3,
            "scaler regular on M - 0": orbit_count_special(N, scaler)[1].sizes == [1, 8],
        }
    return _run(7, "Heisenberg group over F_9", None, body)


def check_08() -> CheckResult:
    def body():
        d = {}
        N = mk_extraspecial_q(ff_make(3, 2), 1)
        target = mk_extraspecial_q(ff_make(3, 1), 2)
        subs = list(enumerate_subspaces(2, 3, 1))
        d["four one-dimensional U"] = len(subs) == 4
        for U in subs:
            _, canon = symplectic_standardize(central_quotient(N, U))
            d[f"U = {U.to_rows()} gives 3^{{1+4}}"] = canon.same_table(target)
        return d
    return _run(8, "9^{1+2}/U standardizes to 3^{1+4}", None, body)


def check_09() -> CheckResult:
    def body():
        d = {}
        ctx = field_for(3, 4)
        census = admissible_scan(ctx, 2)
        d["130 subspaces"] = census["total"] == 130
        hyp = subfield_hyperplanes(ctx, 2)
        d["10 subfield hyperplanes over F_9"] = len(hyp) == 10
        d["equal to the trace-hyperplane orbit"] = set(hyp) == set(hyperplane_orbit(ctx, 2))
        W = [Subspace.from_gens(b, 4, 3) for b in census["witnesses"]]
        for name, rows in (("U1", U1), ("U2", U2)):
            U = Subspace.from_gens(rows, 4, 3)
            d[f"{name} is a witness"] = U in W
            d[f"{name} quotient image order 8"] = len(quotient_image(U, ctx)) == 8
        d["witnesses form one orbit with U1"] = set(W) == set(gl1_subspace_orbit(Subspace.from_gens(U1, 4, 3), ctx))
        parent = mk_heisenberg_q(ctx)
        d["every witness quotient is 3-orbit"] = all(is_3orbit(central_quotient(parent, U)).is3 is True for U in W)
        d["witness count stable"] = admissible_scan(ctx, 2, jobs=2)["witnesses"] == census["witnesses"]
        d["witness_count"] = census["witness_count"]
        return d
    return _run(9, "census at q = 81, dim 2", 60.0, body)


def check_10() -> CheckResult:
    def body():
        N = mk_pres_3_10()
        d = {"order 3^10": N.order == 3 ** 10, "centre of order 9": N.center_order() == 9}
        # relations: [x_i, y_j] is the listed z-word, [x_i, x_j] = [y_i, y_j] = 1, exponent 3
        from .fplinalg import quotient_make
        from .groups.families import PRES_3_10_CENTRAL

        Q = quotient_make(Subspace.from_gens(PRES_3_10_CENTRAL, 4, 3))
        C = N.comm_tensor
        ok = all(np.array_equal(C[i - 1, 4 + j - 1], Q.project(np.array(z))) for (i, j), z in PRES_3_10_COMMUTATORS.items())
        ok &= not C[:4, :4].any() and not C[4:, 4:].any()
        d["listed commutators"] = bool(ok)
        rng = np.random.default_rng(0)
        X = rng.integers(0, 3, (200, N.n + N.m))
        d["exponent 3"] = not N.pow_rows(X, 3).any()
        d["special"] = N.is_special()
        d["3-orbit"] = is_3orbit(N).is3 is True
        return d
    return _run(10, "order-3^10 presentation", None, body)


def check_11() -> CheckResult:
    def body():
        return {f"({p},{n})": singer_multiplicity_free_check(ff_make(p, n))
                for p, n in [(3, 2), (3, 3), (3, 4), (3, 6), (5, 2), (5, 3)]}
    return _run(11, "Lambda^2 of a Singer cycle is multiplicity-free", 5.0, body)


def check_12() -> CheckResult:
    def body():
        ctx = ff_make(3, 6)
        N = mk_suzuki_A(ctx, 2)  # theta = x^9
        pairs = exhibited_gens(N)  # raises LiftFailure if any generator fails
        relifted = all(lift_check(N, a.g) is not None for a in pairs)
        rv, rm, r = orbit_count_special(N, pairs)
        return {
            "order 3^12": N.order == 3 ** 12,
            "every generator lifts": relifted and len(pairs) > 2,
            "o(V) = 2": rv.count == 2,
            "o(M) = 2": rm.count == 2,
            "r = 3": r == 3,
        }
    return _run(12, "A_3(6, x^9) with GL(3,9) generators", 600.0, body)


def check_13() -> CheckResult:
    def body():
        cert = example55_certificate(5, 3)
        hp = cert.subfield_hyperplane
        return {
            "n = 124": cert.n == 124,
            "dim R = 3": cert.R.dim == 3,
            "dim U = 121": cert.U.dim == 121,
            "y has order 124 on R": cert.order_on_R == 124,
            "Frobenius transitive on 124 quotient vectors": cert.quotient_orbit == 124,
            "U contains no subfield hyperplane": hp is None,
            "found hyperplane": None if hp is None else f"d={hp[0]}, dim {hp[1].dim}",
        }
    return _run(13, "Frobenius block at (p, r) = (5, 3)", 60.0, body)


def dual_path_groups():
    """(name, structured orbit count, table) for every group of order <= 729 built above."""
    out = []
    for name, N in [
        ("3^{1+2}", mk_extraspecial_q(ff_make(3, 1), 1)),
        ("3^{1+4}", mk_extraspecial_q(ff_make(3, 1), 2)),
        ("9^{1+2}", mk_heisenberg_q(ff_make(3, 2))),
        ("A_2(3,x^2)", mk_suzuki_A(ff_make(2, 3), 1)),
        ("SU(3,2)", mk_su3_sylow(ff_make(2, 1))),
        ("SU(3,3)", mk_su3_sylow(ff_make(3, 1))),
        ("SU(3,4)", mk_su3_sylow(ff_make(2, 2))),
        ("H_{3,3}", mk_heisenberg_quotient(3, 3)),
    ]:
        out.append((name, orbit_count_special(N, exhibited_gens(N))[2], to_table(N)))
    N9 = mk_extraspecial_q(ff_make(3, 2), 1)
    for U in enumerate_subspaces(2, 3, 1):
        Q = central_quotient(N9, U)
        out.append((f"9^{{1+2}}/{U.to_rows()}", orbit_count_special(Q, exhibited_gens(Q))[2], to_table(Q)))
    P = mk_p_epsilon()
    out.append(("P(eps)", orbit_count_special(P, stabilizer_search(P, "transitive_witness"))[2], to_table(P)))
    for name, T in [("Z_9", mk_homocyclic(3, 1)), ("Z_4^2", mk_homocyclic(2, 2)), ("Z_9^2", mk_homocyclic(3, 2)),
                    ("A_4", mk_pq_frobenius(2, 3, 1)), ("S_3", mk_pq_frobenius(3, 2, 1)),
                    ("405", mk_pq_frobenius(3, 5, 1))]:
        out.append((name, table_orbits(T.order, T.aut_gens, "exhibited").count, T))
    return out


def check_14() -> CheckResult:
    def body():
        from .cli import report_bytes

        d = {}
        for name, structured, T in dual_path_groups():
            d[f"{name}: structured = oracle"] = structured == generic_aut_orbits(T).count == 3
        families = [mk_extraspecial_q(ff_make(3, 2), 1), mk_suzuki_A(ff_make(2, 3), 1), mk_su3_sylow(ff_make(2, 2)),
                    mk_p_epsilon(), mk_heisenberg_quotient(3, 3), mk_pres_3_10(), mk_suzuki_A(ff_make(3, 6), 2)]
        rng = np.random.default_rng(1)
        for N in families:
            X = rng.integers(0, N.p, (256, N.n + N.m))
            name = f'{N.family["name"]} (order {N.p}^{N.n + N.m})'
            d[f"{name}: associative"] = N.check_associative(2000)
            d[f"{name}: special"] = N.is_special()
            exp = N.p if N.p > 2 else 4
            d[f"{name}: exponent divides {exp}"] = not N.pow_rows(X, exp).any()
        a = report_bytes(["scan", "--q", "81", "--dim", "2"])
        b = report_bytes(["scan", "--q", "81", "--dim", "2", "--jobs", "3"])
        c = report_bytes(["check3", "extraspecial_q", "--q", "9"])
        d["scan report byte-stable across runs and jobs"] = a == report_bytes(["scan", "--q", "81", "--dim", "2"]) == b
        d["check3 report byte-stable"] = c == report_bytes(["check3", "extraspecial_q", "--q", "9"])
        d["report is JSON"] = isinstance(json.loads(a), dict)
        return d
    return _run(14, "property suites", None, body)


CHECKS = [check_01, check_02, check_03, check_04, check_05, check_06, check_07,
          check_08, check_09, check_10, check_11, check_12, check_13, check_14]


def run_all(only=None) -> list[CheckResult]:
    return [fn() for i, fn in enumerate(CHECKS, start=1) if only is None or i in only]
