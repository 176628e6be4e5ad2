"""Compare structured orbit counts with brute-force table automorphism orbits for every small group."""
import time

from threeorbit.acceptance import dual_path_groups
from threeorbit.autos.oracle import generic_aut_orbits


def main():
    print(f"{'group':<28}{'structured':>11}{'oracle':>8}")
    bad = 0
    for name, r, T in dual_path_groups():
        t0 = time.perf_counter()
        o = generic_aut_orbits(T).count
        bad += o != r
        print(f"{name:<28}{r:>11}{o:>8}   {'ok' if o == r else 'MISMATCH'}  ({time.perf_counter() - t0:.2f}s)")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
