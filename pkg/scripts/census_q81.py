"""Classify every 2- and 3-dimensional subspace of F_81 under GL(1,81) and print the cell counts.

Usage: python3 scripts/census_q81.py [--jobs N] [--csv PATH]
"""
import argparse

from threeorbit.gammal import admissible_scan, gl1_subspace_orbit
from threeorbit.fplinalg import Subspace
from threeorbit.groups.registry import field_for


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--csv", help="write the dim-2 rows to this file")
    args = ap.parse_args()

    F = field_for(3, 4)
    for dim in (2, 3):
        res = admissible_scan(F, dim, jobs=args.jobs, include_rows=bool(args.csv) and dim == 2)
        print(f"dim {dim}: total {res['total']}  " + "  ".join(f"{k} {v}" for k, v in res["cells"].items()))
        if dim == 2:
            W = {Subspace.from_gens(b, 4, 3) for b in res["witnesses"]}
            orbit = set(gl1_subspace_orbit(next(iter(W)), F)) if W else set()
            print(f"  witnesses: {len(W)}, single GammaL(1,81)-orbit: {W == orbit}")
            if args.csv:
                with open(args.csv, "w") as fh:
                    fh.write("basis,hyperplane,transitive,cell\n")
                    for row in res["rows"]:
                        fh.write(",".join(str(x) for x in row) + "\n")


if __name__ == "__main__":
    main()
