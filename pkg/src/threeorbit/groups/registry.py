"""Build any supported group from a family name and a parameter dict."""

from __future__ import annotations

from ..errors import PreconditionFailed, UnknownFamily
from ..ffield import FieldCtx, ff_make, prime_power
from ..fplinalg import Subspace
from .families import (
    central_quotient,
    mk_extraspecial_q,
    mk_heisenberg_q,
    mk_heisenberg_quotient,
    mk_homocyclic,
    mk_p_epsilon,
    mk_pq_frobenius,
    mk_pres_3_10,
    mk_su3_sylow,
    mk_suzuki_A,
)
from .table import cyclic_group, dihedral_group, quaternion_group

# F_81 is always built on lam^4 = lam^3 + 1 so that published bases are usable verbatim
PINNED_MODULI = {(3, 4): [2, 0, 0, 2, 1]}


def field_for(p: int, n: int, modulus=None) -> FieldCtx:
    if modulus is None:
        modulus = PINNED_MODULI.get((p, n))
    return ff_make(p, n, modulus)


def _field_from(params: dict) -> FieldCtx:
    if "q" in params:
        pp = prime_power(int(params["q"]))
        if pp is None:
            raise PreconditionFailed(f"{params['q']} is not a prime power")
        p, n = pp
    else:
        p, n = int(params["p"]), int(params["n"])
    return field_for(p, n, params.get("modulus"))


def _rows(params: dict, key: str, n: int, p: int) -> Subspace:
    rows = params.get(key) or []
    return Subspace.from_gens(rows, n, p)


def _central_quotient(params: dict):
    parent = params["parent"]
    N = build_group(parent["name"], parent.get("params", {}))
    return central_quotient(N, _rows(params, "U", N.m, N.p))


def _heisenberg_quotient(params: dict):
    n, p = int(params["n"]), int(params["p"])
    W = _rows(params, "W", n * (n - 1) // 2, p)
    return mk_heisenberg_quotient(n, p, W)


BUILDERS = {
    "homocyclic": lambda P: mk_homocyclic(int(P["p"]), int(P["n"])),
    "pq_frobenius": lambda P: mk_pq_frobenius(int(P["p"]), int(P["q"]), int(P.get("n", 1))),
    "suzuki_A": lambda P: mk_suzuki_A(_field_from(P), int(P["e"])),
    "su3_sylow": lambda P: mk_su3_sylow(_field_from(P)),
    "heisenberg_q": lambda P: mk_heisenberg_q(_field_from(P)),
    "extraspecial_q": lambda P: mk_extraspecial_q(_field_from(P), int(P.get("m", 1))),
    "p_epsilon": lambda P: mk_p_epsilon(),
    "heisenberg_quotient": _heisenberg_quotient,
    "central_quotient": _central_quotient,
    "pres_3_10": lambda P: mk_pres_3_10(),
    "cyclic": lambda P: cyclic_group(int(P["k"])),
    "dihedral": lambda P: dihedral_group(int(P["k"])),
    "quaternion": lambda P: quaternion_group(),
}


def build_group(family: str, params: dict | None = None):
    try:
        builder = BUILDERS[family]
    except KeyError:
        raise UnknownFamily(family) from None
    return builder(dict(params or {}))
