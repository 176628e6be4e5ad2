"""Group constructions: cocycle groups, Cayley tables, families, serialisation."""

from .cocycle import CocycleGroup, GroupElement
from .families import (
    central_product,
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
    to_table,
)
from .table import TableGroup, cyclic_group, dihedral_group, quaternion_group

__all__ = [
    "CocycleGroup",
    "GroupElement",
    "TableGroup",
    "central_product",
    "central_quotient",
    "cyclic_group",
    "dihedral_group",
    "mk_extraspecial_q",
    "mk_heisenberg_q",
    "mk_heisenberg_quotient",
    "mk_homocyclic",
    "mk_p_epsilon",
    "mk_pq_frobenius",
    "mk_pres_3_10",
    "mk_su3_sylow",
    "mk_suzuki_A",
    "quaternion_group",
    "to_table",
]
