"""threeorbit command line.

Every command produces one JSON report (sorted keys, no timing) on stdout or
``--out``; elapsed time goes to stderr.  Exit codes: 0 true/ok, 2 bad input,
3 false, 4 unknown or over a size cap, 5 internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time

from . import __version__
from .errors import BudgetExceeded, BudgetExhausted, LiftFailure, ThreeOrbitError, TooLarge
from .ffield import prime_power

EXIT_TRUE, EXIT_USAGE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_INTERNAL = 0, 2, 3, 4, 5

STRATEGY_ALIASES = {"exhibited": "exhibited", "search": "exhibited_then_search", "oracle": "oracle"}


class UsageError(Exception):
    """Bad command-line input; reported as JSON with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def parse_rows(text: str | None) -> list[list[int]]:
    """'1 0 1 0; 0 2 1 2' (or commas) -> [[1, 0, 1, 0], [0, 2, 1, 2]]."""
    if not text:
        return []
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.replace(",", " ").strip()
        if chunk:
            try:
                rows.append([int(t) for t in chunk.split()])
            except ValueError:
                raise UsageError(f"cannot parse row {chunk!r}") from None
    return rows


def _family_params(args) -> dict:
    P = {}
    for key in ("p", "n", "q", "m", "e", "k"):
        val = getattr(args, key, None)
        if val is not None:
            P[key] = val
    if getattr(args, "modulus", None):
        P["modulus"] = [int(t) for t in args.modulus.replace(",", " ").split()]
    if getattr(args, "W", None):
        P["W"] = parse_rows(args.W)
    return P


def load_input(args):
    """The group named by --group, or built from a family name and flags.

    Returns (group, description used for the input digest).
    """
    from .groups import central_quotient
    from .groups import io as gio
    from .groups.registry import build_group
    from .fplinalg import Subspace

    if getattr(args, "group", None):
        try:
            with open(args.group) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read group file: {exc}") from None
        try:
            return gio.loads(text), {"group_file": _digest(text)}
        except (ValueError, KeyError) as exc:
            raise UsageError(f"invalid group file: {exc}") from None
    family = getattr(args, "family", None)
    if not family:
        raise UsageError("give a family name or --group PATH")
    params = _family_params(args)
    if family == "central_quotient":
        if not args.parent:
            raise UsageError("central_quotient needs --parent PATH")
        parent, desc = load_input(argparse.Namespace(group=args.parent))
        U = Subspace.from_gens(parse_rows(args.u), parent.m, parent.p)
        return central_quotient(parent, U), {"family": family, "parent": desc, "U": U.to_rows()}
    try:
        G = build_group(family, params)
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc} for {family}") from None
    return G, {"family": family, "params": params}


def _describe(G) -> dict:
    from .groups import TableGroup

    if isinstance(G, TableGroup):
        return {"kind": "table", "name": G.name, "order": G.order, "center_order": len(G.center()),
                "order_profile": {str(k): int(v) for k, v in sorted(G.order_profile().items())}}
    d = G.describe()
    d["kind"] = "cocycle"
    return d


# --- commands ------------------------------------------------------------------
# each returns (payload, exit code)

def cmd_construct(args):
    from .groups import io as gio

    G, _ = load_input(args)
    text = gio.dumps(G)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    payload = _describe(G)
    payload["file"] = args.out
    payload["file_digest"] = _digest(text)
    return payload, EXIT_TRUE


def cmd_check3(args):
    from .autos.verdict import is_3orbit

    G, _ = load_input(args)
    strategy = STRATEGY_ALIASES[args.strategy]
    try:
        v = is_3orbit(G, strategy)
    except (TooLarge, BudgetExhausted, LiftFailure) as exc:
        payload = {"is3": None, "strategy": strategy, "reason": f"{type(exc).__name__}: {exc}"}
        return payload, EXIT_UNKNOWN
    code = {True: EXIT_TRUE, False: EXIT_FALSE, None: EXIT_UNKNOWN}[v.is3]
    return v.to_json(), code


def cmd_orbits(args):
    from .autos.exhibited import exhibited_gens
    from .autos.oracle import generic_aut_search
    from .autos.orbits import orbit_count_special, table_orbits
    from .groups import TableGroup, to_table

    G, _ = load_input(args)
    strategy = STRATEGY_ALIASES[args.strategy]
    if strategy == "oracle" or (isinstance(G, TableGroup) and not G.aut_gens):
        T = G if isinstance(G, TableGroup) else to_table(G)
        return {"N": generic_aut_search(T, seed=args.seed).report.to_json()}, EXIT_TRUE
    if isinstance(G, TableGroup):
        return {"N": table_orbits(G.order, G.aut_gens, "exhibited").to_json()}, EXIT_TRUE
    rv, rm, r = orbit_count_special(G, exhibited_gens(G))
    return {"V": rv.to_json(), "M": rm.to_json(), "r": r}, EXIT_TRUE


def cmd_rank(args):
    from .autos.oracle import generic_aut_search, holomorph_rank
    from .groups import TableGroup, to_table

    G, _ = load_input(args)
    T = G if isinstance(G, TableGroup) else to_table(G)
    res = generic_aut_search(T, seed=args.seed)
    rank = holomorph_rank(T, res.aut_perms, res.generators)
    return {"order": T.order, "points": T.order, "rank": rank, "automorphism_orbits": res.report.count}, EXIT_TRUE


def cmd_standardize(args):
    from .ffield import ff_make
    from .groups import mk_extraspecial_q
    from .groups.symplectic import standardization

    G, _ = load_input(args)
    s = standardization(G)
    p, n = G.p, G.n
    iso = s.canonical.same_table(mk_extraspecial_q(ff_make(p, 1), n // 2)) and s.verify()
    payload = {
        "p": p,
        "n": n,
        "transform": s.transform.tolist(),
        "canonical_beta": s.canonical.beta.reshape(n, n).tolist(),
        "isomorphic_to": f"{p}^{{1+{n}}}_+" if iso else None,
        "verdict": f"isomorphic to {p}^{{1+{n}}}_+" if iso else "not isomorphic to the standard extraspecial group",
    }
    return payload, EXIT_TRUE if iso else EXIT_FALSE


def cmd_lambda2(args):
    from .exterior import singer_multiplicity_free_check
    from .ffield import ff_make

    ok = singer_multiplicity_free_check(ff_make(args.p, args.n))
    return {"p": args.p, "n": args.n, "multiplicity_free": ok}, EXIT_TRUE if ok else EXIT_FALSE


def _scan_field(args):
    from .groups.registry import field_for

    pp = prime_power(args.q)
    if pp is None:
        raise UsageError(f"q = {args.q} is not a prime power")
    modulus = [int(t) for t in args.modulus.replace(",", " ").split()] if args.modulus else None
    return field_for(pp[0], pp[1], modulus)


def cmd_scan(args):
    from .gammal import admissible_scan

    ctx = _scan_field(args)
    census = admissible_scan(ctx, args.dim, jobs=args.jobs, include_rows=args.format == "csv")
    return census, EXIT_TRUE


def cmd_example55(args):
    from .gammal import dual_scalar_power, example55_certificate

    cert = example55_certificate(args.p, args.r)
    payload = cert.to_json()
    payload["dual_scalar"] = dual_scalar_power(cert)
    ok = cert.structure_ok and cert.hyperplane_free
    return payload, EXIT_TRUE if ok else EXIT_FALSE


def cmd_selftest(args):
    from .acceptance import CHECKS

    only = {int(t) for t in args.only.split(",")} if args.only else None
    results = []
    for i, fn in enumerate(CHECKS, start=1):
        if only is not None and i not in only:
            continue
        res = fn()
        print(res.line(), file=sys.stderr, flush=True)
        results.append({"number": res.number, "title": res.title, "passed": res.passed,
                        "details": {k: v for k, v in res.details.items()}})
    ok = all(r["passed"] for r in results)
    return {"checks": results, "passed": sum(r["passed"] for r in results), "total": len(results)}, \
        EXIT_TRUE if ok else EXIT_FALSE


# --- parser ----------------------------------------------------------------------

FAMILIES = ["homocyclic", "pq_frobenius", "suzuki_A", "su3_sylow", "heisenberg_q", "extraspecial_q",
            "p_epsilon", "heisenberg_quotient", "central_quotient", "pres_3_10", "cyclic", "dihedral",
            "quaternion"]


def _add_family_flags(sp, required: bool):
    sp.add_argument("family", nargs=None if required else "?", choices=FAMILIES,
                    help="group family (omit when --group is given)")
    sp.add_argument("--group", help="read the group from a JSON group file")
    for key, text in [("p", "prime"), ("n", "degree or rank"), ("q", "field order"), ("m", "number of hyperbolic pairs"),
                      ("e", "theta = x^(p^e)"), ("k", "order parameter for cyclic/dihedral")]:
        sp.add_argument(f"--{key}", type=int, help=text)
    sp.add_argument("--modulus", help="field modulus coefficients, low degree first")
    sp.add_argument("--W", help="rows spanning W < Lambda^2, e.g. '1 0 0; 0 1 0'")
    sp.add_argument("--parent", help="parent group file for central_quotient")
    sp.add_argument("--u", help="rows spanning U for central_quotient")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="threeorbit", description="Construct and verify finite 3-orbit groups.")
    ap.add_argument("--version", action="version", version=f"threeorbit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="search-order seed (never changes verdicts)")

    sp = sub.add_parser("construct", help="build a group and write its JSON file")
    _add_family_flags(sp, required=False)
    common(sp)
    sp.set_defaults(fn=cmd_construct)

    for name, fn, text in [("check3", cmd_check3, "is the group 3-orbit?"),
                           ("orbits", cmd_orbits, "automorphism orbit report")]:
        sp = sub.add_parser(name, help=text)
        _add_family_flags(sp, required=False)
        sp.add_argument("--strategy", choices=sorted(STRATEGY_ALIASES), default="exhibited")
        common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("rank", help="rank of the holomorph on the group")
    _add_family_flags(sp, required=False)
    common(sp)
    sp.set_defaults(fn=cmd_rank)

    sp = sub.add_parser("standardize", help="symplectic canonical form (one-dimensional centre)")
    _add_family_flags(sp, required=False)
    common(sp)
    sp.set_defaults(fn=cmd_standardize)

    sp = sub.add_parser("lambda2", help="is Lambda^2 of a Singer cycle multiplicity-free?")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_lambda2)

    sp = sub.add_parser("scan", help="census of subspaces U of F_q by hyperplane/transitivity")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--modulus", help="field modulus coefficients, low degree first")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    common(sp)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("example55", help="Frobenius-block subspace certificate")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--r", type=int, default=3)
    common(sp)
    sp.set_defaults(fn=cmd_example55)

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.add_argument("--only", help="comma-separated check numbers")
    common(sp)
    sp.set_defaults(fn=cmd_selftest)
    return ap


def _parameters(args) -> dict:
    # --jobs changes how the work is split, never the result, so it stays out of the report
    skip = {"fn", "out", "command", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _execute(argv):
    args = build_parser().parse_args(argv)
    if args.command == "scan" and args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    payload, code = args.fn(args)
    report = {
        "command": args.command,
        "parameters": _parameters(args),
        "result": payload,
        "version": __version__,
    }
    report["input_digest"] = _digest(canonical_json(report["parameters"]))
    return args, report, code


def run(argv) -> tuple[dict, int]:
    """Parse and execute; returns (report, exit code).  Raises UsageError on bad input."""
    _, report, code = _execute(argv)
    return report, code


def report_bytes(argv) -> bytes:
    report, _ = run(argv)
    return canonical_json(report).encode()


def _census_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["basis", "hyperplane", "transitive", "cell"])
    for row in report["result"]["rows"]:
        basis = ";".join(" ".join(str(x) for x in r) for r in row["basis"])
        w.writerow([basis, int(row["hyperplane"]), int(row["transitive"]), row["cell"]])
    return buf.getvalue()


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "reason": message}, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    t0 = time.perf_counter()
    try:
        args, report, code = _execute(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except (TooLarge, BudgetExceeded, BudgetExhausted) as exc:
        return _fail(EXIT_UNKNOWN, type(exc).__name__, str(exc))
    except (ThreeOrbitError, ValueError, KeyError) as exc:
        if isinstance(exc, ThreeOrbitError) and not isinstance(exc, (ValueError, KeyError)):
            return _fail(EXIT_INTERNAL, type(exc).__name__, str(exc))
        return _fail(EXIT_USAGE, type(exc).__name__, str(exc))
    except Exception as exc:  # noqa: BLE001
        return _fail(EXIT_INTERNAL, type(exc).__name__, str(exc))
    text = _census_csv(report) if getattr(args, "format", "json") == "csv" else canonical_json(report)
    if args.out and args.command != "construct":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report["result"].get("reason") and code == EXIT_UNKNOWN:
        print(json.dumps({"reason": report["result"]["reason"]}, sort_keys=True), file=sys.stderr)
    print(f"elapsed {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
