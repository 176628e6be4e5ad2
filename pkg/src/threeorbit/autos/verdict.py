"""Is a group 3-orbit?  Verdicts are True, False or None (unknown), never guessed."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetExhausted, PreconditionFailed, TooLarge
from ..groups.cocycle import CocycleGroup
from ..groups.families import to_table
from ..groups.table import TableGroup
from .exhibited import exhibited_gens
from .oracle import ORACLE_CAP, element_invariants, generic_aut_search
from .orbits import orbit_count_special, table_orbits
from .search import stabilizer_search

STRATEGIES = ("exhibited", "exhibited_then_search", "oracle")


@dataclass
class Verdict:
    is3: bool | None
    strategy: str
    method: str
    reason: str = ""
    reports: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "is3": self.is3,
            "strategy": self.strategy,
            "method": self.method,
            "reason": self.reason,
            "reports": self.reports,
            "witnesses": self.witnesses,
        }


def _special_verdict(N: CocycleGroup, pairs, strategy: str, method: str) -> Verdict:
    rv, rm, r = orbit_count_special(N, pairs, method)
    reports = {"V": rv.to_json(), "M": rm.to_json(), "r": r}
    wit = [a.to_json() for a in pairs]
    if rv.count == 2 and rm.count == 2:
        return Verdict(True, strategy, method, "o(V) = o(M) = 2", reports, wit)
    return Verdict(None, strategy, method, f"witness pairs give r = {r}", reports, wit)


def _oracle(T: TableGroup, strategy: str) -> Verdict:
    res = generic_aut_search(T)
    rep = res.report
    return Verdict(rep.count == 3, strategy, "table-oracle", f"{rep.count} automorphism orbits",
                   {"N": rep.to_json(), "exact_by_invariants": res.exact_by_invariants, "nodes": res.nodes})


def _cocycle(N: CocycleGroup, strategy: str) -> Verdict:
    if strategy == "oracle":
        if N.order > ORACLE_CAP:
            raise TooLarge(f"group of order {N.order} exceeds the oracle cap {ORACLE_CAP}")
        return _oracle(to_table(N), strategy)
    if not N.is_special():
        return Verdict(None, strategy, "exhibited", "group is not special")
    pairs = exhibited_gens(N)
    if pairs:
        v = _special_verdict(N, pairs, strategy, "exhibited")
    else:
        v = Verdict(None, strategy, "exhibited", f"no exhibited automorphisms for {N.family.get('name')}")
    if v.is3 or strategy == "exhibited":
        return v
    try:
        found = stabilizer_search(N, "transitive_witness")
    except (PreconditionFailed, BudgetExhausted) as exc:
        v.reason += f"; search unavailable: {exc}"
        return v
    if not found:
        return Verdict(None, strategy, "stabilizer-search", "search found no automorphisms")
    sv = _special_verdict(N, found, strategy, "stabilizer-search")
    if sv.is3:
        return sv
    # the search ran to completion, so ``found`` is all of Aut(N)^V and r is exact
    sv.is3 = False
    sv.reason = f"complete enumeration gives r = {sv.reports['r']}"
    return sv


def _table(T: TableGroup, strategy: str) -> Verdict:
    classes = len(np.unique(element_invariants(T)))
    if strategy == "oracle":
        return _oracle(T, strategy)
    if classes > 3:
        return Verdict(False, strategy, "invariants", f"{classes} isomorphism-invariant element classes")
    if T.aut_gens:
        rep = table_orbits(T.order, T.aut_gens, "exhibited")
        if rep.count == 3 and classes == 3:
            return Verdict(True, strategy, "exhibited", "3 orbits, matching 3 invariant classes",
                           {"N": rep.to_json()})
    if strategy == "exhibited_then_search" and T.order <= ORACLE_CAP:
        return _oracle(T, strategy)
    return Verdict(None, strategy, "exhibited", "exhibited automorphisms do not settle the count")


def is_3orbit(N, strategy: str = "exhibited") -> Verdict:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(N, TableGroup):
        return _table(N, strategy)
    return _cocycle(N, strategy)
