"""Valuations, primitive roots, Hensel lifting and discrete logs modulo p^m."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactpoly import Poly, poly_derivative, poly_eval_mod

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ZeroInput(ValueError):
    pass


class NotCoprime(ValueError):
    pass


class NotPrimitiveRoot(ValueError):
    pass


class SingularRoot(ArithmeticError):
    pass


class NoSolution(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^64."""
    if n >= 1 << 64:
        raise ValueError("primality is only certified below 2^64")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (inputs here are p-1 for small p)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("exponent m must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def modulus(self) -> int:
        return self.p**self.m

    @property
    def phi(self) -> int:
        return (self.p - 1) * self.p ** (self.m - 1)


@dataclass(frozen=True)
class ValuationResult:
    value: int

    @property
    def exact_div(self) -> bool:
        return self.value == 1


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Union[int, Fraction], p: int) -> ValuationResult:
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("valuation of zero is undefined")
    return ValuationResult(_vp_int(abs(x.numerator), p) - _vp_int(x.denominator, p))


def is_primitive_root(g: int, pp: PrimePower) -> bool:
    if math.gcd(g, pp.p) != 1:
        raise NotCoprime(f"{g} shares a factor with {pp.p}")
    phi, mod = pp.phi, pp.modulus
    ells = prime_factors(pp.p - 1)
    if pp.m >= 2:
        ells.append(pp.p)
    return all(pow(g, phi // ell, mod) != 1 for ell in ells)


@dataclass(frozen=True)
class HenselLift:
    root: int
    modulus: int
    differs_mod_p2: bool  # root is not congruent to the seed modulo p^2


def hensel_root(P: Poly, pp: PrimePower, seed: int) -> HenselLift:
    """Lift a simple root of P modulo p to p^m by Newton iteration."""
    p = pp.p
    if poly_eval_mod(P, seed, p, 1) != 0:
        raise ValueError(f"{seed} is not a root of P modulo {p}")
    dP = poly_derivative(P)
    if poly_eval_mod(dP, seed, p, 1) == 0:
        raise SingularRoot(f"P'({seed}) vanishes modulo {p}")
    target = max(pp.m, 2)
    x, k = seed % p, 1
    while k < target:
        k = min(2 * k, target)
        mod = p**k
        fx = poly_eval_mod(P, x, p, k)
        dfx = poly_eval_mod(dP, x, p, k)
        x = (x - fx * pow(dfx, -1, mod)) % mod
    mod = pp.modulus
    return HenselLift(x % mod, mod, (x - seed) % (p * p) != 0)


def tower_mod(a: int, n: int, pp: PrimePower) -> int:
    """a^(2^n) mod p^m by n squarings."""
    if math.gcd(a, pp.p) != 1:
        raise NotCoprime(f"{a} shares a factor with {pp.p}")
    mod = pp.modulus
    x = a % mod
    for _ in range(n):
        x = x * x % mod
    return x


def _bsgs(g: int, h: int, mod: int, order: int) -> int | None:
    """Smallest e in [0, order) with g^e = h (mod mod)."""
    step = math.isqrt(order - 1) + 1 if order > 1 else 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(step):
        table.setdefault(cur, j)
        cur = cur * g % mod
    giant = pow(g, -step, mod)
    cur = h % mod
    for i in range(step + 1):
        if cur in table:
            e = i * step + table[cur]
            if e < order:
                return e
        cur = cur * giant % mod
    return None


def _factorize(n: int) -> dict[int, int]:
    return {q: _vp_int(n, q) for q in prime_factors(n)}


def discrete_log(g: int, h: int, mod: int, order: int) -> int | None:
    """Pohlig-Hellman: e in [0, order) with g^e = h, where g has the given order."""
    residues, moduli = [], []
    for q, e in _factorize(order).items():
        qe = q**e
        cofactor = order // qe
        gq = pow(g, cofactor, mod)  # order q^e
        hq = pow(h, cofactor, mod)
        gamma = pow(gq, q ** (e - 1), mod)  # order q
        x = 0
        for k in range(e):
            hk = pow(pow(gq, -x, mod) * hq % mod, q ** (e - 1 - k), mod)
            d = _bsgs(gamma, hk, mod, q)
            if d is None:
                return None
            x += d * q**k
        residues.append(x)
        moduli.append(qe)
    x, M = 0, 1
    for r, n in zip(residues, moduli):
        # CRT merge of x mod M with r mod n (coprime moduli)
        t = (r - x) * pow(M, -1, n) % n
        x, M = x + M * t, M * n
    x %= order
    return x if pow(g, x, mod) == h % mod else None


def _check_two_primitive(p: int) -> None:
    if not is_primitive_root(2, PrimePower(p, 2)):
        raise NotPrimitiveRoot(f"2 is not a primitive root modulo {p}^2")


def dlog2(x: int, pp: PrimePower) -> int | None:
    """n in [0, phi(p^m)) with 2^n = x (mod p^m)."""
    _check_two_primitive(pp.p)
    if math.gcd(x, pp.p) != 1:
        raise NotCoprime(f"{x} shares a factor with {pp.p}")
    return discrete_log(2, x % pp.modulus, pp.modulus, pp.phi)


@dataclass(frozen=True)
class DoubleExpSolution:
    n: int       # least n >= 1 with base^(2^n) = x (mod p^m)
    period: int  # every n + j*period (j >= 0) is also a solution
    offset: int  # least n0 with p || base^(2^n0) - 1


def first_exact_index(base: int, p: int, limit: int | None = None) -> int | None:
    """Least n >= 0 with p || base^(2^n) - 1, or None."""
    if base % p == 0:
        return None
    limit = p + 1 if limit is None else limit
    mod = p * p
    x = base % mod
    for n in range(limit + 1):
        if x % p == 1:
            # the valuation of x - 1 is frozen from here on (p odd)
            return n if x != 1 else None
        x = x * x % mod
    return None


def solve_double_exp(x: int, pp: PrimePower, base: int = 2) -> DoubleExpSolution:
    """Least n >= 1 with base^(2^n) = x (mod p^m), for x with p || x - 1.

    Writes base^(2^n0) = b, which has order p^(m-1); solves b^s = x, then
    2^j = s modulo p^(m-1) using that 2 generates (Z/p^(m-1))^*.
    """
    p, m = pp.p, pp.m
    if m < 2:
        raise ValueError("m must be >= 2")
    if (x - 1) % p != 0 or (x - 1) % (p * p) == 0:
        raise NoSolution(f"{p} does not exactly divide x - 1")
    _check_two_primitive(p)
    n0 = first_exact_index(base, p)
    if n0 is None:
        raise NoSolution(f"no n with {p} || {base}^(2^n) - 1")
    mod = pp.modulus
    b = tower_mod(base, n0, pp)
    sub_order = p ** (m - 1)
    s = discrete_log(b, x % mod, mod, sub_order)
    if s is None or s % p == 0:
        raise NoSolution("x is not in the subgroup generated by the tower")
    low = PrimePower(p, m - 1)
    period = low.phi
    j = discrete_log(2, s % low.modulus, low.modulus, period)
    if j is None:
        raise NoSolution("2 does not reach the required exponent")
    n = n0 + j
    if n < 1:
        n += period
    return DoubleExpSolution(n, period, n0)
