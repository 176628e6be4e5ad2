"""Orbit counts for A_3(6, theta) with theta = x^9 and theta = x^81, using GL(3,9) generators."""
from threeorbit.autos.exhibited import exhibited_gens
from threeorbit.autos.orbits import orbit_count_special
from threeorbit.ffield import ff_make
from threeorbit.groups import mk_suzuki_A


def main():
    ctx = ff_make(3, 6)
    for e in (2, 4):
        N = mk_suzuki_A(ctx, e)
        pairs = exhibited_gens(N)
        rv, rm, r = orbit_count_special(N, pairs)
        print(f"theta = x^{3 ** e}: {len(pairs)} generators lift; "
              f"V orbits {rv.sizes}, M orbits {rm.sizes}, r = {r}")


if __name__ == "__main__":
    main()
