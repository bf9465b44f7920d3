"""Release checks, one function per criterion.

Each check returns a :class:`CriterionResult`; both ``thuemorse selftest``
and ``tests/test_acceptance.py`` drive these.  Runtime ceilings are part of
each criterion and are enforced here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import approx
from .approx import (
    InsufficientPrecision,
    acceptable,
    check_acceptable,
    ftmm_value,
    kempner_value,
    quality,
    quotient_counts,
    real_cf,
    reduce,
    scan,
    tau_tm,
    tilde_pair,
    witness,
)
from .cfseries import canonicalize, extract_cf, implied_betas, is_convergent
from .config import Config
from .exactpoly import TM_STREAM, Poly, parse_poly
from .numtheory import PrimePower, is_primitive_root
from .tmcf import CanonicalTable, double, structure_report

SCAN_POOL = (3, 5, 11, 13, 19, 29, 61)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    limit: float = 0.0
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s / {self.limit:.0f}s) {self.detail}"


def _timed(number: int, name: str, limit: float):
    def wrap(fn: Callable[..., tuple[bool, str, list[str]]]):
        def run(cfg: Config, table: CanonicalTable) -> CriterionResult:
            start = time.perf_counter()
            try:
                ok, detail, notes = fn(cfg, table)
            except (InsufficientPrecision, AssertionError, ArithmeticError, ValueError) as exc:
                ok, detail, notes = False, f"{type(exc).__name__}: {exc}", []
            elapsed = time.perf_counter() - start
            if elapsed > limit:
                ok = False
                detail += f" runtime {elapsed:.1f}s exceeds {limit:.0f}s"
            return CriterionResult(number, name, ok, detail, elapsed, limit, notes)

        run.number = number
        run.__name__ = fn.__name__
        return run

    return wrap


REFERENCE = {
    5: ("z^4-z^2-1", "(z+1)(z^4+z^2+1)"),
    6: ("(z-1)(z^4-2)", "z^6+z^4"),
    7: ("z^6-2*z^4-z^2+3", "(z+1)(z^6-z^2-1)"),
    9: ("z^8-3*z^6+2*z^4+3*z^2-4", "(z+1)(z^8-z^6+z^2+2)"),
}
REFERENCE_Q11 = (
    "z^11+z^10+2/3*z^9+2/3*z^8+4/3*z^7+4/3*z^6+z^5+z^4+2/3*z^3+2/3*z^2+1/3*z+1/3"
)


def _product(text: str) -> Poly:
    """Parse a product of parenthesized factors such as ``(z+1)(z^4+1)``."""
    if "(" not in text:
        return parse_poly(text)
    out = Poly([1])
    for factor in text.strip("()").split(")("):
        out = out * parse_poly(factor)
    return out


@_timed(1, "reference convergents", 1)
def reference_convergents(cfg, table):
    bad = []
    for n, (p, q) in REFERENCE.items():
        c = table(n)
        if c.Phat != _product(p) or c.Qhat != _product(q):
            bad.append(n)
    if table(11).Qhat != parse_poly(REFERENCE_Q11):
        bad.append(11)
    return not bad, f"mismatched n={bad}" if bad else "n=5,6,7,9,11 exact", []


@_timed(2, "engine/closed-form equivalence", 30)
def engine_equivalence(cfg, table):
    pre = extract_cf(TM_STREAM, 60)
    if pre.verified_count != 60:
        return False, f"only {pre.verified_count} pairs certified", []
    bad = []
    for n in range(1, 61):
        c, k = canonicalize(pre.pairs[n - 1]), table(n)
        if (c.P, c.Q) != (k.Phat, k.Qhat):
            bad.append(n)
    implied = implied_betas(pre.pairs)
    bad_beta = [k for k in range(3, 61) if implied[k] != table.beta(k)]
    ok = not bad and not bad_beta
    return ok, f"pairs mismatched {bad[:5]}, betas mismatched {bad_beta[:5]}" if not ok else "n=1..60, beta_3..beta_60", []


@_timed(3, "convergent criterion", 10)
def convergent_criterion(cfg, table):
    bad = []
    for n in range(1, 41):
        c = table(n)
        rep = is_convergent(c.Phat, c.Qhat)
        if not rep.ok or rep.degree is None or rep.degree > -(n + 1):
            bad.append(n)
    r = is_convergent(table(9).Phat, table(9).Qhat).residual
    lead_ok = r.error_degree == -19 and r.error_leading == 6
    ok = not bad and lead_ok
    detail = f"n=1..40 ok; f - P9/Q9 = {r.error_leading}*z^{r.error_degree} + ..."
    return ok, detail if ok else f"failed n={bad}, n=9 error term {r.error_leading}*z^{r.error_degree}", []


@_timed(4, "structure and doubling", 10)
def structure(cfg, table):
    for n in range(2, 31):
        structure_report(n, table)
    bad = []
    for n in range(2, 21):
        d = double(table(n).pair)
        if (d.P, d.Q) != (table(2 * n).Phat, table(2 * n).Qhat):
            bad.append(n)
    return not bad, "structure n=2..30, doubling n=2..20" if not bad else f"doubling failed n={bad}", []


@_timed(5, "acceptable primes", 60)
def acceptable_primes(cfg, table):
    problems = []
    c3 = acceptable(3, 16, table)
    if c3 is None or (c3.t, c3.q1, c3.qprime1) != (9, 6, 11):
        problems.append(f"p=3 -> {c3.t if c3 else None}")
    c5 = acceptable(5, 16, table)
    if c5 is None or c5.t != 11:
        problems.append(f"p=5 -> {c5.t if c5 else None}")
    for p, t in ((29, 35), (11, 43), (61, 49), (19, 19), (13, 33)):
        c = acceptable(p, t, table)
        if c is None or c.t > t or not check_acceptable(p, t, table).ok:
            problems.append(f"p={p} not certified with t<={t}")
    for p in (7, 113):
        if is_primitive_root(2, PrimePower(p, 2)):
            problems.append(f"2 reported primitive mod {p}^2")
    return not problems, "; ".join(problems) or "3->9, 5->11, 29/11/61/19/13 certified, 7 and 113 rejected", []


@_timed(6, "witnesses m=3..10", 30)
def witnesses(cfg, table):
    problems = []
    found = {}
    for m in range(3, 11):
        w = witness(3, 9, 2, m, table)
        found[m] = w.n_m
        if not (m < w.n_m <= 3 ** (m - 1) and w.q_divisible and w.p_divisible):
            problems.append(f"m={m}: {w}")
    if found.get(3, 99) > 9:
        problems.append(f"n_3={found.get(3)}")
    return not problems, "; ".join(problems) or f"n_m={found}", []


@_timed(7, "quality decay", 120)
def quality_decay(cfg, table):
    bits = cfg.precision_bits
    problems, notes = [], []
    for n in range(0, 9):
        q = quality(tilde_pair(n, 9, 2, cfg.size_limit_bits, table), bits)
        if not (0 < q.lower and q.upper <= 25):
            problems.append(f"n={n}: [{float(q.lower)}, {float(q.upper)}]")
        notes.append(f"n={n}: {float(q.lower):.12g}")
    w3 = witness(3, 9, 2, 3, table)
    base = tilde_pair(w3.n_m, 9, 2, cfg.size_limit_bits, table)
    if bits < 6000:
        raise InsufficientPrecision(f"reduction check needs >= 6000 bits, have {bits}")
    q0 = quality(base, bits)
    q3 = quality(reduce(base, 3, 3, verify_bits=bits), bits)
    if not q3.upper < q0.lower / 700:
        problems.append(f"m=3 reduced {float(q3.upper)} vs {float(q0.lower)}/700")
    notes.append(f"m=3: n_3={w3.n_m}, reduced quality {float(q3.lower):.6g}")
    for m in range(4, 11):
        w = witness(3, 9, 2, m, table)
        try:
            pair = tilde_pair(w.n_m, 9, 2, cfg.size_limit_bits, table)
        except approx.SizeLimit:
            notes.append(f"m={m}: n_m={w.n_m} beyond size limit, modular check only")
            continue
        red = reduce(pair, 3, m)
        q = quality(red, max(bits, approx.required_bits(red)))
        notes.append(f"m={m}: n_m={w.n_m}, reduced quality {float(q.lower):.6g}")
        if not q.upper < q0.lower / 700:
            problems.append(f"m={m} reduced quality {float(q.upper)}")
    return not problems, "; ".join(problems) or f"n=0..8 in (0,25]; reduced m=3 quality {float(q3.lower):.6g}", notes


@_timed(8, "constant identity", 10)
def constant_identity(cfg, table):
    bad = [b for b in (64, 1024, 8192)
           if not tau_tm(b).intersects(ftmm_value(2, b).affine(-1, 1, halvings=1))]
    return not bad, f"bits {bad} disjoint" if bad else "64/1024/8192 bits", []


@_timed(9, "tau partial quotients", 300)
def tau_quotients(cfg, table):
    cf = real_cf(tau_tm(20000), 6000)
    qs = cf.quotients[:1000]
    if len(qs) < 1000:
        return False, f"only {len(cf.quotients)} certified quotients", []
    fours = sum(1 for q in qs if q in (4, 5))
    ok = fours >= 5 and max(qs) > 50
    notes = []
    hits = [i + 1 for i, q in enumerate(qs) if q == 2569]
    if hits:
        notes.append(f"2569 at positions {hits}")
    else:
        counts = quotient_counts(qs)
        notes.append("2569 absent from first 1000 quotients of tau_TM; multiset: "
                     + ", ".join(f"{k}x{v}" for k, v in counts.items()))
        f_cf = real_cf(ftmm_value(2, 20000), 6000).quotients
        f_hits = [i + 1 for i, q in enumerate(f_cf) if q == 2569]
        notes.append(f"2569 in CF of f(2) at positions {f_hits}")
    return ok, f"{len(cf.quotients)} certified; 4/5 occur {fours}x, max {max(qs)}", notes


@_timed(10, "contrast constant", 30)
def contrast(cfg, table):
    cf = real_cf(kempner_value(2000), 200)
    ok = len(cf.quotients) == 200 and set(cf.quotients) <= {1, 2}
    return ok, f"{len(cf.quotients)} certified, values {sorted(set(cf.quotients))}", []


@_timed(11, "base scan", 120)
def base_scan(cfg, table):
    rows = {r.a: r for r in scan(2, 104, SCAN_POOL, cfg.t_max, cfg.n_max)}
    missing = [a for a, r in rows.items() if a % 15 and r.p is None]
    multiples = {a: rows[a].p for a in (30, 45, 60, 75, 90)}
    want = {30: 29, 45: 11, 60: 61, 75: 19, 90: 13}
    problems = []
    if missing:
        problems.append(f"no certificate for a={missing}")
    wrong = {a: p for a, p in multiples.items() if p is None}
    if wrong:
        problems.append(f"multiples of 15 uncovered: {sorted(wrong)}")
    for a, p in want.items():
        if not any(approx.exactly_divides_tower(a, n, p) for n in range(cfg.n_max + 1)):
            problems.append(f"reference prime {p} does not exactly divide {a}^(2^n)-1")
        elif acceptable(p, cfg.t_max, table) is None:
            problems.append(f"reference prime {p} not acceptable with t <= {cfg.t_max}")
    if rows[15].p is not None:
        problems.append(f"a=15 unexpectedly certified by {rows[15].p}")
    notes = [f"multiples of 15 -> {multiples} (reference primes {want})"]
    return not problems, "; ".join(problems) or "all a != 15 certified", notes


ALL = [
    reference_convergents,
    engine_equivalence,
    convergent_criterion,
    structure,
    acceptable_primes,
    witnesses,
    quality_decay,
    constant_identity,
    tau_quotients,
    contrast,
    base_scan,
]


def run_all(cfg: Config | None = None, table: CanonicalTable | None = None) -> list[CriterionResult]:
    from .tmcf import default_table

    cfg = cfg or Config()
    table = table or default_table()
    return [check(cfg, table) for check in ALL]
