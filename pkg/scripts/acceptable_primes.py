"""List primes below a bound for which some canonical denominator gives a certificate."""

import argparse

from thuemorse.approx import acceptable
from thuemorse.numtheory import PrimePower, is_prime, is_primitive_root


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=120)
    ap.add_argument("--t-max", type=int, default=64)
    args = ap.parse_args()

    print("p    2 prim. root mod p^2   t")
    for p in range(3, args.p_max + 1):
        if not is_prime(p):
            continue
        prim = is_primitive_root(2, PrimePower(p, 2))
        cert = acceptable(p, args.t_max) if prim else None
        t = cert.t if cert else "-"
        print(f"{p:<4d} {str(prim):<22s} {t}")


if __name__ == "__main__":
    main()
