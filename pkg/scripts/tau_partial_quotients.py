"""Certified partial quotients of the Thue-Morse constant and of f(2)."""

import argparse

from thuemorse.approx import ftmm_value, quotient_counts, real_cf, tau_tm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bits", type=int, default=20000)
    ap.add_argument("--look-for", type=int, default=2569)
    ap.add_argument("--top", type=int, default=15)
    args = ap.parse_args()

    for name, x in (("tau", tau_tm(args.bits)), ("f(2)", ftmm_value(2, args.bits))):
        cf = real_cf(x, 10**6)
        qs = cf.quotients
        hits = [i + 1 for i, q in enumerate(qs) if q == args.look_for]
        big = sorted(quotient_counts(qs).items(), key=lambda kv: -kv[0])[: args.top]
        print(f"{name}: {len(qs)} certified at {args.bits} bits")
        print(f"  first 20: {list(qs[:20])}")
        print(f"  4 or 5 occur {sum(q in (4, 5) for q in qs)} times")
        print(f"  largest values: {big}")
        print(f"  {args.look_for} at positions {hits or 'none'}")


if __name__ == "__main__":
    main()
