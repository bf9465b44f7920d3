"""Command-line front end.

Every subcommand writes records to stdout, one per line, as JSON objects or
as ``key=value`` text; diagnostics go to stderr.  Exit status is 0 on
success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, approx
from .cfseries import ConvergentPair, PrecisionExhausted, canonicalize, extract_cf
from .config import CONFIG_ENV, Config, load_config
from .exactpoly import TM_STREAM, LaurentTail, format_poly, parse_poly
from .tmcf import CanonicalTable, NotAConvergent, ShapeViolation, default_table, double, structure_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def emit(record: dict, cfg: Config, out=None) -> None:
    out = out or sys.stdout
    if cfg.format == "json":
        out.write(json.dumps(record) + "\n")
    else:
        out.write(" ".join(f"{k}={_text(v)}" for k, v in record.items()) + "\n")


def _text(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _pool(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# --- subcommands -------------------------------------------------------------


def cmd_beta(args, cfg, table):
    emit({"n": args.n, "beta": str(table.beta(args.n))}, cfg)
    return EXIT_OK


def cmd_convergent(args, cfg, table):
    c = table(args.n)
    emit({"n": args.n, "P": format_poly(c.Phat), "Q": format_poly(c.Qhat)}, cfg)
    return EXIT_OK


def cmd_cf_series(args, cfg, table):
    if args.num is not None or args.den is not None:
        if args.num is None or args.den is None:
            raise UsageError("--num and --den go together")
        tail = LaurentTail.from_rational(parse_poly(args.num), parse_poly(args.den))
    else:
        tail = TM_STREAM
    pre = extract_cf(tail, args.count)
    for k, (a, pair) in enumerate(zip(pre.quotients, pre.pairs), start=1):
        c = canonicalize(pair)
        emit({"k": k, "quotient": format_poly(a), "P": format_poly(c.P), "Q": format_poly(c.Q),
              "verified": k <= pre.verified_count}, cfg)
    if pre.terminated:
        print(f"expansion terminated after {len(pre.quotients)} quotients", file=sys.stderr)
    return EXIT_OK if pre.verified_count == len(pre.quotients) else EXIT_FAIL


def cmd_double(args, cfg, table):
    pair = ConvergentPair(parse_poly(args.P), parse_poly(args.Q))
    try:
        d = double(pair)
    except NotAConvergent as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    emit({"P": format_poly(d.P), "Q": format_poly(d.Q)}, cfg)
    return EXIT_OK


def cmd_structure(args, cfg, table):
    try:
        rep = structure_report(args.n, table)
    except ShapeViolation as exc:
        emit({"n": args.n, "ok": False, "clause": exc.clause, "detail": exc.detail}, cfg)
        return EXIT_FAIL
    emit({"n": args.n, "ok": True, "Q_2n": format_poly(table(2 * args.n).Qhat),
          "Q_odd_even_part": format_poly(rep.even_part)}, cfg)
    return EXIT_OK


def _pair(args, cfg, table):
    return approx.tilde_pair(args.n, args.t, args.a, cfg.size_limit_bits, table)


def cmd_approx(args, cfg, table):
    emit(_pair(args, cfg, table).to_record(), cfg)
    return EXIT_OK


def cmd_quality(args, cfg, table):
    pair = _pair(args, cfg, table)
    bits = args.bits or cfg.precision_bits
    emit(approx.quality(pair, bits).to_record(pair), cfg)
    return EXIT_OK


def cmd_acceptable(args, cfg, table):
    t_max = args.t_max or cfg.t_max
    cert = approx.acceptable(args.p, t_max, table)
    if cert is None:
        emit({"p": str(args.p), "t": None, "q1_valuation": None, "qprime_nonzero": None,
              "primroot": None}, cfg)
        return EXIT_FAIL
    emit(cert.to_record(), cfg)
    return EXIT_OK


def cmd_witness(args, cfg, table):
    w = approx.witness(args.p, args.t, args.a, args.m, table)
    emit(w.to_record(), cfg)
    return EXIT_OK if w.ok and w.bound_ok else EXIT_FAIL


def cmd_reduce(args, cfg, table):
    pair = _pair(args, cfg, table)
    try:
        red = approx.reduce(pair, args.p, args.k)
    except approx.NotDivisible as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    rec = red.to_record()
    if args.bits:
        before = approx.quality(pair, args.bits)
        after = approx.quality(red, args.bits)
        rec.update(quality_lower=str(after.lower), quality_upper=str(after.upper),
                   original_lower=str(before.lower), original_upper=str(before.upper))
    emit(rec, cfg)
    return EXIT_OK


def cmd_scan(args, cfg, table):
    rows = approx.scan(args.a_min, args.a_max, _pool(args.pool), args.t_max or cfg.t_max,
                       args.n_max or cfg.n_max)
    for row in rows:
        emit(row.to_record(), cfg)
    return EXIT_OK


def cmd_real_cf(args, cfg, table):
    bits = args.bits or cfg.precision_bits
    if args.constant == "tau":
        x = approx.tau_tm(bits)
    elif args.constant == "ftmm":
        x = approx.ftmm_value(args.a, bits)
    else:
        x = approx.kempner_value(bits)
    cf = approx.real_cf(x, args.terms)
    emit({"constant": args.constant, "bits": str(bits), "a0": _text(cf.a0),
          "certified": str(len(cf.quotients)), "exhausted": cf.exhausted,
          "quotients": ",".join(map(str, cf.quotients))}, cfg)
    return EXIT_OK


def cmd_selftest(args, cfg, table):
    if args.inject_fault == "beta":
        table = CanonicalTable()
        table.beta.corrupt(7, Fraction(5))
    failed = False
    for result in acceptance.run_all(cfg, table):
        print(result.line())
        for note in result.notes:
            print(f"    {note}")
        failed |= not result.passed
    return EXIT_FAIL if failed else EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thuemorse", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"))
    ap.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    ap.add_argument("--precision-bits", type=int)
    ap.add_argument("--t-max", dest="global_t_max", type=int)
    ap.add_argument("--n-max", dest="global_n_max", type=int)
    ap.add_argument("--size-limit-bits", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beta", help="beta_n from the recurrence")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("convergent", help="canonical n-th convergent")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_convergent)

    p = sub.add_parser("cf-series", help="generic engine on the Thue-Morse series or N/D")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--num")
    p.add_argument("--den")
    p.set_defaults(func=cmd_cf_series)

    p = sub.add_parser("double", help="apply (P, Q) -> ((z-1)P(z^2), Q(z^2))")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("structure", help="shape checks for index n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_structure)

    for name, func, help_ in (("approx", cmd_approx, "scaled integer pair"),
                              ("quality", cmd_quality, "certified q|qf - p|")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--t", type=int, default=9)
        p.add_argument("--a", type=int, default=2)
        if name == "quality":
            p.add_argument("--bits", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("acceptable", help="smallest t certifying a prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t-max", type=int)
    p.set_defaults(func=cmd_acceptable)

    p = sub.add_parser("witness", help="p^m divisibility witness")
    for flag in ("--p", "--t", "--a", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("reduce", help="divide a pair by p^k")
    for flag in ("--n", "--p", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--t", type=int, default=9)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--bits", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("scan", help="certificates for a range of bases")
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--a-max", type=int, default=104)
    p.add_argument("--pool", default=",".join(map(str, acceptance.SCAN_POOL)))
    p.add_argument("--t-max", type=int)
    p.add_argument("--n-max", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("real-cf", help="certified partial quotients of a constant")
    p.add_argument("--constant", choices=("tau", "ftmm", "kempner"), default="tau")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--bits", type=int)
    p.add_argument("--terms", type=int, default=100)
    p.set_defaults(func=cmd_real_cf)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--inject-fault", choices=("beta",), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # certificates print integers with millions of digits
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            format=args.format,
            precision_bits=args.precision_bits,
            t_max=args.global_t_max,
            n_max=args.global_n_max,
            size_limit_bits=args.size_limit_bits,
        )
        return args.func(args, cfg, default_table())
    except (approx.InsufficientPrecision, approx.SizeLimit, PrecisionExhausted,
            NotAConvergent, ArithmeticError) as exc:
        print(f"thuemorse: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError, OSError) as exc:
        print(f"thuemorse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
