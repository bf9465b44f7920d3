"""Closed-form continued fraction of the Thue-Morse Laurent series.

Canonical convergents ``Phat_n / Qhat_n`` (monic numerators) obey

    X_{n+1} = (z + (-1)^n) X_n + beta_{n+1} X_{n-1}

with ``beta_3 = -1``, ``beta_4 = 1`` and, for n >= 2,
``beta_{2n+1} = -beta_{n+1} / beta_{2n}``,
``beta_{2n+2} = 1 + (-1)^n - beta_{2n+1}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .cfseries import ConvergentPair, is_convergent
from .exactpoly import Poly, is_even_poly, substitute

Z = Poly.z()
ONE = Poly([1])
Z_PLUS_1 = Poly([1, 1])
Z_MINUS_1 = Poly([-1, 1])


class NotAConvergent(ValueError):
    pass


class ShapeViolation(AssertionError):
    def __init__(self, clause: str, detail: str):
        super().__init__(f"clause {clause}: {detail}")
        self.clause = clause
        self.detail = detail


class BetaTable:
    """Append-only memo of beta_n for n >= 3."""

    def __init__(self):
        self._memo: dict[int, Fraction] = {3: Fraction(-1), 4: Fraction(1)}
        self._top = 4
        self._lock = threading.Lock()

    def __call__(self, n: int) -> Fraction:
        if n < 3:
            raise ValueError(f"beta_n is defined for n >= 3, got {n}")
        if n > self._top:
            with self._lock:
                for k in range(self._top + 1, n + 1):
                    h = (k - 1) // 2  # k = 2h+1 or k = 2h+2
                    if k % 2:
                        val = -self._memo[h + 1] / self._memo[2 * h]
                    else:
                        val = 1 + (-1) ** h - self._memo[2 * h + 1]
                    if val == 0:
                        raise ZeroDivisionError(f"beta_{k} vanished")
                    self._memo[k] = val
                self._top = max(self._top, n)
        return self._memo[n]

    def corrupt(self, n: int, value: Fraction) -> None:
        """Overwrite an entry (fault injection for self-tests)."""
        self(n)
        with self._lock:
            self._memo[n] = Fraction(value)


@dataclass(frozen=True)
class CanonicalConvergent:
    n: int
    Phat: Poly
    Qhat: Poly

    @property
    def pair(self) -> ConvergentPair:
        return ConvergentPair(self.Phat, self.Qhat, canonical=True)


class CanonicalTable:
    """Memoized canonical convergents driven by a :class:`BetaTable`."""

    def __init__(self, betas: BetaTable | None = None):
        self.beta = betas if betas is not None else BetaTable()
        self._P = [Poly(), ONE, Z_MINUS_1]
        self._Q = [Poly(), Z_PLUS_1, Poly([1, 0, 1])]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> CanonicalConvergent:
        if n < 1:
            raise ValueError("n must be positive")
        if n >= len(self._Q):
            with self._lock:
                for k in range(len(self._Q) - 1, n):
                    # builds index k+1 from k and k-1
                    shift = Z_PLUS_1 if k % 2 == 0 else Z_MINUS_1
                    b = self.beta(k + 1)
                    self._P.append(shift * self._P[k] + self._P[k - 1] * b)
                    self._Q.append(shift * self._Q[k] + self._Q[k - 1] * b)
        return CanonicalConvergent(n, self._P[n], self._Q[n])


_DEFAULT = CanonicalTable()


def default_table() -> CanonicalTable:
    return _DEFAULT


def beta(n: int, table: CanonicalTable | None = None) -> Fraction:
    return (table or _DEFAULT).beta(n)


def canonical(n: int, table: CanonicalTable | None = None) -> CanonicalConvergent:
    return (table or _DEFAULT)(n)


def double(pair: ConvergentPair, verify: bool = True) -> ConvergentPair:
    """Map ``(P, Q)`` to ``((z-1) P(z^2), Q(z^2))``."""
    if verify and not is_convergent(pair.P, pair.Q):
        raise NotAConvergent(f"{pair.P} / {pair.Q} is not a convergent")
    out = ConvergentPair(Z_MINUS_1 * substitute(pair.P, "square"), substitute(pair.Q, "square"),
                         canonical=pair.canonical)
    if verify and not is_convergent(out.P, out.Q):
        raise NotAConvergent("doubled pair failed verification")
    return out


@dataclass(frozen=True)
class StructureReport:
    n: int
    even_part: Poly  # E with Qhat_{2n-1} = (z+1) E(z^2)
    quotients: dict[int, Poly] = field(default_factory=dict)  # k -> ahat_k


def implied_quotient(k: int, table: CanonicalTable | None = None) -> Poly:
    """ahat_k = (Qhat_k - beta_k Qhat_{k-2}) / Qhat_{k-1}, by exact division (k >= 3)."""
    table = table or _DEFAULT
    num = table(k).Qhat - table(k - 2).Qhat * table.beta(k)
    a, rem = divmod(num, table(k - 1).Qhat)
    if not rem.is_zero():
        raise ShapeViolation("iii", f"Qhat_{k - 1} does not divide the recurrence numerator")
    return a


def structure_report(n: int, table: CanonicalTable | None = None) -> StructureReport:
    """Check the even/odd shape of Qhat_{2n}, Qhat_{2n-1} and the monic quotients up to 2n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    table = table or _DEFAULT
    q_n = table(n).Qhat
    if table(2 * n).Qhat != substitute(q_n, "square"):
        raise ShapeViolation("i", f"Qhat_{2 * n} != Qhat_{n}(z^2)")

    odd = table(2 * n - 1).Qhat
    e2, rem = divmod(odd, Z_PLUS_1)
    if not rem.is_zero() or not is_even_poly(e2):
        raise ShapeViolation("ii", f"Qhat_{2 * n - 1} is not (z+1) times an even polynomial")
    even_part = Poly(e2.coeffs[::2])
    if even_part.degree != n - 1:
        raise ShapeViolation("ii", f"even factor has degree {even_part.degree}, expected {n - 1}")

    quotients = {}
    for k in range(3, 2 * n + 1):
        a = implied_quotient(k, table)
        want = Z_PLUS_1 if k % 2 else Z_MINUS_1
        if a != want:
            raise ShapeViolation("iii", f"ahat_{k} = {a}, expected {want}")
        quotients[k] = a
    return StructureReport(n, even_part, quotients)
