"""Explain which bases the prime pool cannot certify.

A pool prime p certifies a only if p || a^(2^n) - 1 for some n.  That needs
ord_p(a) = 2^k, and then the p-adic valuation of a^(2^n) - 1 is the same for
every n >= k, so one check at n = k settles all n.
"""

import argparse

from thuemorse.approx import scan
from thuemorse.numtheory import valuation

POOL = (3, 5, 11, 13, 19, 29, 61)


def order(a, p):
    x, k = a % p, 1
    while x != 1:
        x, k = x * a % p, k + 1
    return k


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a-max", type=int, default=104)
    args = ap.parse_args()

    for row in scan(2, args.a_max, POOL):
        if row.p is not None:
            continue
        reasons = []
        for p in POOL:
            if row.a % p == 0:
                reasons.append(f"{p}|a")
                continue
            o = order(row.a, p)
            if o & (o - 1):
                reasons.append(f"ord_{p}={o}")
            else:
                v = valuation(row.a ** o - 1, p).value
                reasons.append(f"v_{p}={v}")
        print(f"a={row.a:<4d} " + " ".join(reasons))


if __name__ == "__main__":
    main()
