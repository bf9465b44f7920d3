"""Continued fractions of Laurent tails in 1/z.

A tail ``g`` with ``deg g < 0`` expands as ``1/(a_1 + 1/(a_2 + ...))`` with
polynomial partial quotients.  :func:`extract_cf` peels them off lazily:
each remainder is itself a :class:`~thuemorse.exactpoly.LaurentTail` whose
coefficients are pulled from the previous one only when needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import LaurentTail, Poly, Residual, residual

#: How far past a remainder's start index to look for its first non-zero
#: coefficient before giving up.
DEFAULT_SCAN_LIMIT = 64


class PrecisionExhausted(RuntimeError):
    """The stream could not certify the next partial quotient."""


class ZeroNumerator(ValueError):
    pass


@dataclass(frozen=True)
class ConvergentPair:
    P: Poly
    Q: Poly
    canonical: bool = False

    def __post_init__(self):
        if self.Q.is_zero():
            raise ValueError("convergent denominator must be non-zero")

    @property
    def rho(self) -> Fraction:
        """Leading coefficient of the numerator."""
        return self.P.lead

    def same_fraction(self, other: "ConvergentPair") -> bool:
        return self.P * other.Q == other.P * self.Q


@dataclass(frozen=True)
class CFPrefix:
    quotients: tuple[Poly, ...]
    pairs: tuple[ConvergentPair, ...]
    verified_count: int
    terminated: bool = False  # the input was rational and its CF is exhausted


@dataclass(frozen=True)
class ConvergenceReport:
    ok: bool
    residual: Residual

    @property
    def degree(self) -> int | None:
        return self.residual.degree

    def __bool__(self) -> bool:
        return self.ok


def is_convergent(
    P: Poly, Q: Poly, tail: LaurentTail | None = None, K: int | None = None
) -> ConvergenceReport:
    """Check ``deg(Q*tail - P) < -deg Q`` on a truncated residual.

    A residual that vanishes through ``z^(-K)`` has degree below ``-K``, which
    still certifies the criterion as long as ``K >= deg Q``.
    """
    if Q.is_zero():
        raise ValueError("Q must be non-zero")
    dq = Q.degree
    if K is None:
        K = 2 * dq + 16
    K = max(K, dq)
    r = residual(P, Q, K, tail)
    d = r.degree
    ok = True if d is None else d < -dq
    return ConvergenceReport(ok, r)


def pq_recurrence(quotients: Sequence[Poly]) -> list[ConvergentPair]:
    """Convergents from partial quotients, seeded with P_0 = 0, Q_0 = 1, P_1 = 1, Q_1 = a_1."""
    pairs = []
    p_prev, q_prev = Poly([1]), Poly()
    p, q = Poly(), Poly([1])
    for a in quotients:
        if a.is_zero() or a.degree < 1:
            raise ValueError("partial quotients must have degree >= 1")
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        pairs.append(ConvergentPair(p, q))
    return pairs


def canonicalize(pair: ConvergentPair) -> ConvergentPair:
    """Scale so the numerator is monic."""
    if pair.P.is_zero():
        raise ZeroNumerator("cannot normalize a zero numerator")
    rho = pair.rho
    if rho == 1:
        return ConvergentPair(pair.P, pair.Q, canonical=True)
    return ConvergentPair(pair.P / rho, pair.Q / rho, canonical=True)


def _reciprocal_stream(g: LaurentTail, h: int) -> LaurentTail:
    """Coefficients d_0, d_1, ... with ``1/g = sum_j d_j z^(h-j)``; c_h must be the lead."""
    lead_inv = 1 / g.coefficient(h)
    d: LaurentTail

    def gen(j: int) -> Fraction:
        if j == 0:
            return lead_inv
        acc = Fraction(0)
        for i in range(1, j + 1):
            c = g.coefficient(h + i)
            if c:
                acc += c * d.coefficient(j - i)
        return -acc * lead_inv

    d = LaurentTail(0, gen)
    return d


def _split_reciprocal(g: LaurentTail, scan_limit: int) -> tuple[Poly, LaurentTail] | None:
    """Return ``(a, g')`` with ``1/g = a + g'``, or None if g is exactly zero."""
    if g.rational is not None:
        N, D = g.rational
        if N.is_zero():
            return None
        a, R = divmod(D, N)
        return a, LaurentTail.from_rational(R, N)
    h = g.leading_index(g.start + scan_limit)
    if h is None:
        raise PrecisionExhausted(
            f"no non-zero coefficient in indices {g.start}..{g.start + scan_limit}"
        )
    d = _reciprocal_stream(g, h)
    a = Poly(d.coefficient(h - e) for e in range(h + 1))
    return a, LaurentTail(1, lambda k: d.coefficient(k + h))


def extract_cf(
    tail: LaurentTail, count: int, scan_limit: int = DEFAULT_SCAN_LIMIT
) -> CFPrefix:
    """First ``count`` partial quotients of ``tail`` with their certified convergents.

    Quotients are returned as computed (not normalized).  A pair only counts
    towards ``verified_count`` once :func:`is_convergent` confirms it against
    the original tail.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if tail.start < 1:
        raise ValueError("tail must have negative degree")
    quotients: list[Poly] = []
    terminated = False
    g = tail
    for _ in range(count):
        split = _split_reciprocal(g, scan_limit)
        if split is None:
            terminated = True
            break
        a, g = split
        quotients.append(a)
    pairs = pq_recurrence(quotients)
    verified = 0
    for pair in pairs:
        if not is_convergent(pair.P, pair.Q, tail):
            break
        verified += 1
    return CFPrefix(tuple(quotients), tuple(pairs), verified, terminated)


def implied_betas(pairs: Sequence[ConvergentPair]) -> dict[int, Fraction]:
    """beta_k = rho_{k-2} / rho_k for k >= 3, from raw (non-normalized) convergents.

    ``pairs[0]`` is the first convergent.
    """
    return {k: pairs[k - 3].rho / pairs[k - 1].rho for k in range(3, len(pairs) + 1)}
