"""Certified quality q|q f(2) - p| of the doubled pairs, before and after reduction by 3^m."""

import argparse

from thuemorse.approx import SizeLimit, quality, reduce, tilde_pair, witness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--bits", type=int, default=16384)
    ap.add_argument("--size-limit-bits", type=int, default=10**6)
    args = ap.parse_args()

    print("n  quality")
    for n in range(args.n_max + 1):
        rep = quality(tilde_pair(n, 9, 2), args.bits)
        print(f"{n:<2d} {float(rep.lower):.12f}")

    print("\nm  n_m    reduced quality")
    for m in range(3, args.m_max + 1):
        w = witness(3, 9, 2, m)
        try:
            pair = tilde_pair(w.n_m, 9, 2, args.size_limit_bits)
        except SizeLimit:
            print(f"{m:<2d} {w.n_m:<6d} (too large; divisibility checked modulo 3^{m} only)")
            continue
        bits = max(args.bits, 2 * pair.q_int.bit_length() + 64)
        red = quality(reduce(pair, 3, m), bits)
        print(f"{m:<2d} {w.n_m:<6d} {float(red.lower):.6g}")


if __name__ == "__main__":
    main()
