"""Integer approximation pairs, certified values, quality and divisibility witnesses.

For a convergent index t, tower index n and base a the pair is

    ptilde = prod_{k=0}^{n} (a^(2^k) - 1) * Phat_t(a^(2^(n+1)))
    qtilde = Qhat_t(a^(2^(n+1)))

scaled by ``d_P * d_Q`` (denominator lcms of Phat_t, Qhat_t) so both are
integers.  Real numbers are handled as dyadic intervals with outward rounding;
nothing here touches floating point.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactpoly import (
    Poly,
    denominator_lcm,
    eval_int,
    integer_poly,
    poly_derivative,
    poly_eval,
    poly_eval_mod,
    substitute,
    tm_bit,
)
from .numtheory import (
    NoSolution,
    PrimePower,
    ValuationResult,
    ZeroInput,
    hensel_root,
    is_primitive_root,
    solve_double_exp,
    valuation,
)
from .tmcf import CanonicalTable, default_table

DEFAULT_SIZE_LIMIT_BITS = 10**7


class SizeLimit(ValueError):
    pass


class InsufficientPrecision(ValueError):
    pass


class NoWitness(ArithmeticError):
    pass


class NotDivisible(ArithmeticError):
    pass


# --- dyadic intervals --------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class DyadicInterval:
    """The closed interval ``[lo / 2^shift, hi / 2^shift]``."""

    lo: int
    hi: int
    shift: int
    terms: int = 0  # series terms summed to produce it, for reporting

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def enclose(cls, center: Fraction, radius: Fraction, shift: int, terms: int = 0):
        scale = 1 << shift
        lo = center - radius
        hi = center + radius
        return cls(
            (lo.numerator * scale) // lo.denominator,
            _ceil_div(hi.numerator * scale, hi.denominator),
            shift,
            terms,
        )

    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.shift)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.shift)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.shift)

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.shift + 1))

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper

    def intersects(self, other: "DyadicInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def affine(self, a: int, b: int = 0, halvings: int = 0) -> "DyadicInterval":
        """The image under ``x -> (a*x + b) / 2^halvings``."""
        lo = a * self.lo + (b << self.shift)
        hi = a * self.hi + (b << self.shift)
        if a < 0:
            lo, hi = hi, lo
        return DyadicInterval(lo, hi, self.shift + halvings, self.terms)

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def _terms_for(a: int, bits: int) -> int:
    # smallest K with a^(-K)/(a-1) <= 2^-(bits+2)
    K = max(1, math.ceil((bits + 2) / math.log2(a)) - 1)
    while a**K * (a - 1) < 1 << (bits + 2):
        K += 1
    return K


def ftmm_value(a: int, bits: int) -> DyadicInterval:
    """Interval of width <= 2^-bits around sum_{i>=0} (-1)^{t_i} a^{-(i+1)}."""
    if a < 2:
        raise ValueError("base must be >= 2")
    K = _terms_for(a, bits)
    if a == 2:
        # sum of +-2^(K-1-i) = 2*B - (2^K - 1), B the number whose bits are the + signs
        B = int("".join("0" if tm_bit(i) else "1" for i in range(K)), 2)
        num = 2 * B - ((1 << K) - 1)
    else:
        num = 0
        for i in range(K):
            num = num * a + (1 - 2 * tm_bit(i))
    den = a**K
    return DyadicInterval.enclose(Fraction(num, den), Fraction(1, den * (a - 1)), bits + 2, K)


def tau_tm(bits: int) -> DyadicInterval:
    """Interval of width <= 2^-bits around sum_k t_k 2^{-(k+1)}."""
    K = bits + 1
    digits = "".join("1" if tm_bit(k) else "0" for k in range(K))
    B = int(digits, 2)
    # tail lies in [0, 2^-K]
    tau = DyadicInterval(B, B + 1, K, K)
    check = ftmm_value(2, bits).affine(-1, 1, halvings=1)
    if not tau.intersects(check):
        raise ArithmeticError("tau_TM and (1 - f(2))/2 do not intersect")
    return tau


def kempner_value(bits: int) -> DyadicInterval:
    """Interval around 2 * sum_{k>=0} 2^(-2^k)."""
    K = 1
    while (1 << K) < bits + 4:
        K += 1
    s = sum(Fraction(2, 1 << (1 << k)) for k in range(K))
    # tail 2*sum_{k>=K} 2^(-2^k) <= 4 * 2^(-2^K)
    return DyadicInterval.enclose(s, Fraction(4, 1 << (1 << K)), bits + 2, K)


# --- approximation pairs -----------------------------------------------------


@dataclass(frozen=True)
class ApproxPair:
    n: int
    t: int
    a: int
    p_int: int
    q_int: int
    d_P: int
    d_Q: int
    divisor: int = 1  # common factor removed by reduce()

    def to_record(self) -> dict:
        return {k: str(v) for k, v in dataclasses.asdict(self).items()}


def tilde_polys(n: int, t: int, table: CanonicalTable | None = None) -> tuple[Poly, Poly]:
    """Polynomial forms of ptilde_{n,t}, qtilde_{n,t} (before evaluation)."""
    c = (table or default_table())(t)
    P, Q = c.Phat, c.Qhat
    for _ in range(n + 1):
        P, Q = substitute(P, "square"), substitute(Q, "square")
    for k in range(n + 1):
        P = P * (Poly.monomial(2**k) - 1)
    return P, Q


def tilde_pair(
    n: int,
    t: int,
    a: int,
    size_limit_bits: int = DEFAULT_SIZE_LIMIT_BITS,
    table: CanonicalTable | None = None,
) -> ApproxPair:
    if n < 0 or t < 1 or a < 2:
        raise ValueError("need n >= 0, t >= 1, a >= 2")
    table = table or default_table()
    c = table(t)
    cP, dP = integer_poly(c.Phat)
    cQ, dQ = integer_poly(c.Qhat)
    estimate = (dP * dQ).bit_length() + 2 * t * 2**n * a.bit_length()
    if estimate > size_limit_bits:
        raise SizeLimit(f"pair needs about {estimate} bits (limit {size_limit_bits})")
    z0 = a ** (2 ** (n + 1))
    prod = 1
    x = a
    for _ in range(n + 1):
        prod *= x - 1
        x *= x
    p_int = dQ * prod * eval_int(cP, z0)
    q_int = dP * eval_int(cQ, z0)
    if q_int < 0:
        p_int, q_int = -p_int, -q_int
    if t == 9 and n <= 2:
        P, Q = tilde_polys(n, t, table)
        big = table(t * 2 ** (n + 1))
        if (P, Q) != (big.Phat, big.Qhat):
            raise AssertionError(f"tilde pair ({n}, {t}) differs from canonical({t * 2 ** (n + 1)})")
    return ApproxPair(n, t, a, p_int, q_int, dP, dQ)


@dataclass(frozen=True)
class QualityReport:
    """Bracket for q * |q * f(a) - p|."""

    lower: Fraction
    upper: Fraction
    bits_used: int
    tail_terms: int

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper

    def to_record(self, pair: ApproxPair) -> dict:
        return {
            "n": str(pair.n),
            "t": str(pair.t),
            "a": str(pair.a),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "bits": str(self.bits_used),
        }


def required_bits(pair: ApproxPair) -> int:
    return 2 * pair.q_int.bit_length() + 64


def quality(pair: ApproxPair, bits: int) -> QualityReport:
    if bits < required_bits(pair):
        raise InsufficientPrecision(f"need at least {required_bits(pair)} bits, got {bits}")
    f = ftmm_value(pair.a, bits)
    q, p = pair.q_int, pair.p_int
    off = p << f.shift
    e_lo, e_hi = q * f.lo - off, q * f.hi - off
    if e_lo >= 0:
        lo, hi = e_lo, e_hi
    elif e_hi <= 0:
        lo, hi = -e_hi, -e_lo
    else:
        lo, hi = 0, max(-e_lo, e_hi)
    scale = 1 << f.shift
    rep = QualityReport(Fraction(q * lo, scale), Fraction(q * hi, scale), bits, f.terms)
    if rep.upper - rep.lower > Fraction(1, 256) * max(Fraction(1), rep.lower):
        raise InsufficientPrecision("quality bracket is wider than 2^-8 relative")
    return rep


def reduce(pair: ApproxPair, p: int, k: int, verify_bits: int | None = None) -> ApproxPair:
    """Divide both integers by p^k; optionally certify quality scales by p^(-2k)."""
    r = p**k
    if pair.p_int % r or pair.q_int % r:
        raise NotDivisible(f"{p}^{k} does not divide both integers")
    out = dataclasses.replace(
        pair, p_int=pair.p_int // r, q_int=pair.q_int // r, divisor=pair.divisor * r
    )
    if verify_bits is not None:
        before = quality(pair, verify_bits)
        after = quality(out, verify_bits)
        r2 = r * r
        if not (after.lower * r2 <= before.upper and before.lower <= after.upper * r2):
            raise ArithmeticError("reduced quality is not the original divided by p^(2k)")
    return out


# --- acceptable primes -------------------------------------------------------


@dataclass(frozen=True)
class AcceptabilityCertificate:
    p: int
    t: int
    q1_valuation: ValuationResult | None  # None when Qhat_t(1) = 0
    qprime_nonzero: bool
    primroot: bool
    denominators_ok: bool = True
    q1: Fraction = Fraction(0)
    qprime1: Fraction = Fraction(0)
    skipped: tuple[int, ...] = ()  # smaller t rejected for non-coprime denominators

    @property
    def ok(self) -> bool:
        return (
            self.primroot
            and self.denominators_ok
            and self.q1_valuation is not None
            and self.q1_valuation.exact_div
            and self.qprime_nonzero
        )

    def to_record(self) -> dict:
        return {
            "p": str(self.p),
            "t": str(self.t),
            "q1_valuation": None if self.q1_valuation is None else str(self.q1_valuation.value),
            "qprime_nonzero": self.qprime_nonzero,
            "primroot": self.primroot,
        }


def check_acceptable(p: int, t: int, table: CanonicalTable | None = None) -> AcceptabilityCertificate:
    """Evaluate the three prime conditions for a single t (result may be not ``ok``)."""
    Q = (table or default_table())(t).Qhat
    primroot = is_primitive_root(2, PrimePower(p, 2))
    dens_ok = denominator_lcm(Q) % p != 0
    q1 = poly_eval(Q, 1)
    dq = poly_derivative(Q)
    qp1 = poly_eval(dq, 1)
    try:
        v = valuation(q1, p)
    except ZeroInput:
        v = None
    qprime_nonzero = dens_ok and poly_eval_mod(dq, 1, p, 1) != 0
    return AcceptabilityCertificate(p, t, v, qprime_nonzero, primroot, dens_ok, q1, qp1)


def acceptable(
    p: int, t_max: int, table: CanonicalTable | None = None
) -> AcceptabilityCertificate | None:
    """Smallest t <= t_max certifying p, or None."""
    if t_max > 200:
        raise ValueError("t_max is limited to 200")
    if not is_primitive_root(2, PrimePower(p, 2)):
        return None
    skipped = []
    for t in range(1, t_max + 1):
        cert = check_acceptable(p, t, table)
        if not cert.denominators_ok:
            skipped.append(t)
            continue
        if cert.ok:
            return dataclasses.replace(cert, skipped=tuple(skipped))
    return None


# --- divisibility witnesses --------------------------------------------------


@dataclass(frozen=True)
class WitnessRecord:
    p: int
    t: int
    a: int
    m: int
    x_m: int
    n_m: int
    bound_ok: bool
    q_divisible: bool
    p_divisible: bool
    period: int = 0

    @property
    def ok(self) -> bool:
        return self.q_divisible and self.p_divisible and self.n_m > self.m

    def to_record(self) -> dict:
        return {
            "p": str(self.p),
            "t": str(self.t),
            "a": str(self.a),
            "m": str(self.m),
            "x_m": str(self.x_m),
            "n_m": str(self.n_m),
            "bound_ok": self.bound_ok,
            "q_divisible": self.q_divisible,
            "p_divisible": self.p_divisible,
        }


def witness_bound(p: int, m: int) -> int:
    if p == 3:
        return 3 ** (m - 1)
    return m + (p - 1) * p ** (m - 2)


def scaled_residues(n: int, t: int, a: int, pp: PrimePower, table: CanonicalTable | None = None):
    """(scaled ptilde, scaled qtilde) modulo p^m, without forming the big integers."""
    c = (table or default_table())(t)
    cP, dP = integer_poly(c.Phat)
    cQ, dQ = integer_poly(c.Qhat)
    mod = pp.modulus
    prod, x = 1, a % mod
    for _ in range(n + 1):
        prod = prod * (x - 1) % mod
        x = x * x % mod
    # x is now a^(2^(n+1)) mod p^m
    p_res = dQ * prod * eval_int(cP, x) % mod
    q_res = dP * eval_int(cQ, x) % mod
    return p_res, q_res


def witness(p: int, t: int, a: int, m: int, table: CanonicalTable | None = None) -> WitnessRecord:
    """Find a tower index n_m > m with p^m dividing both scaled integers."""
    if m < 3:
        raise ValueError("m >= 3 required")
    table = table or default_table()
    cert = check_acceptable(p, t, table)
    if not cert.ok:
        raise ValueError(f"({p}, {t}) is not an acceptable pair")
    pp = PrimePower(p, m)
    x_m = hensel_root(table(t).Qhat, pp, 1).root
    try:
        sol = solve_double_exp(x_m, pp, base=a)
    except NoSolution as exc:
        raise NoWitness(str(exc)) from exc
    # qtilde_n uses a^(2^(n+1)), so the tower index is one less than the exponent level
    n_m = sol.n - 1
    while n_m <= m:
        n_m += sol.period
    p_res, q_res = scaled_residues(n_m, t, a, pp, table)
    return WitnessRecord(
        p, t, a, m, x_m, n_m,
        bound_ok=n_m <= witness_bound(p, m),
        q_divisible=q_res == 0,
        p_divisible=p_res == 0,
        period=sol.period,
    )


# --- base scan ----------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    a: int
    p: int | None = None
    n: int | None = None
    t: int | None = None

    def to_record(self) -> dict:
        return {k: None if v is None else str(v) for k, v in dataclasses.asdict(self).items()}


@lru_cache(maxsize=None)
def _acceptable_cached(p: int, t_max: int) -> AcceptabilityCertificate | None:
    return acceptable(p, t_max)


def exactly_divides_tower(a: int, n: int, p: int) -> bool:
    """p || a^(2^n) - 1, computed modulo p^2."""
    x = pow(a, 2**n, p * p)
    return x % p == 1 and x != 1


def scan(
    a_min: int,
    a_max: int,
    prime_pool: Sequence[int],
    t_max: int = 64,
    n_max: int = 8,
) -> list[ScanRow]:
    if not 2 <= a_min <= a_max:
        raise ValueError("need 2 <= a_min <= a_max")
    certs = {p: _acceptable_cached(p, t_max) for p in prime_pool}
    rows = []
    for a in range(a_min, a_max + 1):
        row = ScanRow(a)
        for p in prime_pool:
            cert = certs[p]
            if cert is None or a % p == 0:
                continue
            hit = next((n for n in range(n_max + 1) if exactly_divides_tower(a, n, p)), None)
            if hit is not None:
                row = ScanRow(a, p, hit, cert.t)
                break
        rows.append(row)
    return rows


# --- certified real continued fractions --------------------------------------


@dataclass(frozen=True)
class CertifiedCF:
    a0: int | None
    quotients: tuple[int, ...]
    exhausted: bool  # stopped because the endpoints disagreed, not at max_terms


def real_cf(x: DyadicInterval, max_terms: int) -> CertifiedCF:
    """Partial quotients shared by every real number in the interval."""
    n1, d1 = x.lo, 1 << x.shift
    n2, d2 = x.hi, 1 << x.shift
    a0 = n1 // d1
    if a0 != n2 // d2:
        return CertifiedCF(None, (), True)
    out: list[int] = []
    a = a0
    while True:
        n1, n2 = n1 - a * d1, n2 - a * d2
        if n1 == 0 or n2 == 0 or len(out) >= max_terms:
            break
        n1, d1, n2, d2 = d1, n1, d2, n2
        a = n1 // d1
        if a != n2 // d2:
            break
        out.append(a)
    return CertifiedCF(a0, tuple(out), len(out) < max_terms)


def quotient_counts(qs: Iterable[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for q in qs:
        counts[q] = counts.get(q, 0) + 1
    return dict(sorted(counts.items()))
