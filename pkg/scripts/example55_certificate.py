"""Build the Frobenius-block subspace U of F_{5^124} for (p, r) = (5, 3) and report its properties.

Usage: python3 scripts/example55_certificate.py [--p P] [--r R]
"""
import argparse
import time

from threeorbit.gammal import dual_scalar_power, example55_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--r", type=int, default=3)
    args = ap.parse_args()

    t0 = time.perf_counter()
    cert = example55_certificate(args.p, args.r)
    print(f"n = {cert.n}, dim R = {cert.R.dim}, dim U = {cert.U.dim}")
    print(f"order of Frobenius on R: {cert.order_on_R}")
    print(f"Frobenius orbit on nonzero quotient vectors: {cert.quotient_orbit}")
    hp = cert.subfield_hyperplane
    if hp is None:
        print("U contains no proper subfield hyperplane")
    else:
        d, W = hp
        print(f"U contains an F_{{{args.p}^{d}}}-hyperplane of dimension {W.dim}")
        print(f"y^{d} acts on the dual of U as the scalar {dual_scalar_power(cert)}")
    print(f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
