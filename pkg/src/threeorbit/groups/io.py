"""JSON group files (cocycle-group/v1 and table-group/v1)."""

from __future__ import annotations

import json

import numpy as np

from .cocycle import CocycleGroup
from .table import TableGroup

COCYCLE_FORMAT = "cocycle-group/v1"
TABLE_FORMAT = "table-group/v1"


def to_json_obj(G) -> dict:
    if isinstance(G, CocycleGroup):
        return {
            "format": COCYCLE_FORMAT,
            "p": G.p,
            "n": G.n,
            "m": G.m,
            "beta": G.beta.tolist(),
            "family": {"name": G.family.get("name", "cocycle"), "params": G.family.get("params", {})},
        }
    if isinstance(G, TableGroup):
        obj = {
            "format": TABLE_FORMAT,
            "order": G.order,
            "table": G.table.tolist(),
            "identity": G.identity,
            "name": G.name,
        }
        if G.aut_gens:
            obj["aut_gens"] = [np.asarray(g).tolist() for g in G.aut_gens]
        return obj
    raise TypeError(f"cannot serialise {type(G).__name__}")


def dumps(G) -> str:
    return json.dumps(to_json_obj(G), sort_keys=True, separators=(",", ":")) + "\n"


def from_json_obj(obj: dict):
    fmt = obj.get("format")
    if fmt == COCYCLE_FORMAT:
        return CocycleGroup(obj["p"], obj["n"], obj["m"], np.array(obj["beta"], dtype=np.int64).reshape(
            obj["n"], obj["n"], obj["m"]), obj.get("family", {}))
    if fmt == TABLE_FORMAT:
        return TableGroup(np.array(obj["table"], dtype=np.int64), identity=obj.get("identity", 0),
                          name=obj.get("name", "table"),
                          aut_gens=[np.array(g, dtype=np.int64) for g in obj.get("aut_gens", [])])
    raise ValueError(f"unknown group file format {fmt!r}")


def loads(text: str):
    return from_json_obj(json.loads(text))


def save(G, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(G))


def load(path):
    with open(path) as fh:
        return loads(fh.read())
