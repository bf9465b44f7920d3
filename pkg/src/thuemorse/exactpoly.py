"""Exact polynomials over Q, lazy Laurent tails in 1/z, and the Thue-Morse stream.

Integers are Python ints and rationals are ``fractions.Fraction``; both are
exact at any size.  A :class:`Poly` is dense and immutable.  A
:class:`LaurentTail` represents ``sum_{k >= h} c_k z^(-k)`` and produces
coefficients on demand, memoizing what it has already computed.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Number = Union[int, Fraction]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


class NonInvertibleDenominator(ArithmeticError):
    """A coefficient denominator is not a unit modulo p."""


def tm_bit(i: int) -> int:
    """Return the i-th Thue-Morse bit t_i.

    Walks the binary digits of ``i`` from the top, applying ``t_{2n} = t_n``
    and ``t_{2n+1} = 1 - t_n``.
    """
    if i < 0:
        raise ValueError("index must be non-negative")
    t = 0
    for digit in bin(i)[2:]:
        if digit == "1":
            t ^= 1
    return t


def tm_bit_parity(i: int) -> int:
    """Thue-Morse bit via the parity of the binary weight of ``i``."""
    return bin(i).count("1") & 1


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Dense univariate polynomial with Fraction coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self):
        """Degree as an int, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # arithmetic
    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Number) -> "Poly":
        c = _frac(c)
        return Poly(x / c for x in self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv_lead = 1 / other.lead
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: Number) -> Fraction:
        return poly_eval(self, x)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def poly_eval(P: Poly, x: Number) -> Fraction:
    """Exact value P(x) by Horner's rule."""
    acc = Fraction(0)
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


def integer_poly(P: Poly) -> tuple[list[int], int]:
    """Return ``(coeffs, d)`` with ``d = denominator_lcm(P)`` and ``coeffs`` of ``d*P``."""
    d = denominator_lcm(P)
    return [int(c * d) for c in P.coeffs], d


def eval_int(coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation of an integer coefficient list (low degree first)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_mod(P: Poly, x: int, p: int, m: int) -> int:
    """P(x) in Z/p^m, with denominators replaced by modular inverses."""
    mod = p**m
    acc = 0
    for c in reversed(P.coeffs):
        if math.gcd(c.denominator, p) != 1:
            raise NonInvertibleDenominator(
                f"denominator {c.denominator} is not invertible modulo {p}"
            )
        cm = c.numerator * pow(c.denominator, -1, mod) % mod
        acc = (acc * x + cm) % mod
    return acc


def poly_derivative(P: Poly) -> Poly:
    return Poly(k * c for k, c in enumerate(P.coeffs) if k > 0)


def substitute(P: Poly, mode: str) -> Poly:
    """``mode='square'`` gives P(z^2); ``mode='negate'`` gives P(-z)."""
    if mode == "square":
        out: list[Fraction] = []
        for c in P.coeffs:
            out.extend((c, Fraction(0)))
        return Poly(out)
    if mode == "negate":
        return Poly(-c if k % 2 else c for k, c in enumerate(P.coeffs))
    raise ValueError(f"unknown substitution mode {mode!r}")


def denominator_lcm(P: Poly) -> int:
    d = 1
    for c in P.coeffs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return d


def poly_gcd(A: Poly, B: Poly) -> Poly:
    """Monic gcd by Euclid; gcd(0, 0) is 0."""
    while not B.is_zero():
        A, B = B, A % B
    return A / A.lead if not A.is_zero() else A


def is_even_poly(P: Poly) -> bool:
    return all(c == 0 for c in P.coeffs[1::2])


# --- polynomial text grammar -------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(P: Poly, var: str = "z") -> str:
    """Render ``P`` in the text grammar, e.g. ``z^8-3*z^6+2*z^4+3*z^2-4``."""
    if P.is_zero():
        return "0"
    out = []
    for k in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            body = _format_coeff(a)
        elif a == 1:
            body = power
        else:
            body = f"{_format_coeff(a)}*{power}"
        if not out and sign == "+":
            sign = ""
        out.append(sign + body)
    return "".join(out)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?\s*(\*)?\s*)?(?:([a-zA-Z])(?:\s*\^\s*(\d+))?)?\s*"
)


def parse_poly(text: str) -> Poly:
    """Inverse of :func:`format_poly`; accepts any single-letter variable."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    var = None
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        sign, num, den, star, v, exp = m.groups()
        if num is None and v is None:
            raise ValueError(f"empty term in {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator before {m.group(0)!r}")
        if star and v is None:
            raise ValueError(f"dangling '*' in {text!r}")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ValueError("more than one variable")
        c = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        k = 0 if v is None else (int(exp) if exp is not None else 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    return Poly(coeffs.get(k, 0) for k in range(top + 1))


# --- Laurent tails -----------------------------------------------------------


class LaurentTail:
    """Lazy series ``sum_{k >= start} c_k z^(-k)``.

    ``generator(k)`` is called for k = start, start+1, ... strictly in order, so
    recurrence-style generators may read earlier values through
    :meth:`coefficient`.  ``rational``, when given, is an exact ``(N, D)`` pair
    with ``N/D`` equal to the whole series; consumers may use it to detect
    termination exactly.
    """

    def __init__(
        self,
        start: int,
        generator: Callable[[int], Number],
        rational: tuple[Poly, Poly] | None = None,
    ):
        self.start = start
        self._gen = generator
        self._memo: list[Fraction] = []
        self._lock = threading.RLock()
        self.rational = rational

    @classmethod
    def from_rational(cls, N: Poly, D: Poly) -> "LaurentTail":
        """Expansion of N/D in powers of 1/z; requires deg N < deg D."""
        if D.is_zero():
            raise ZeroDivisionError("zero denominator")
        if N.degree >= D.degree:
            raise ValueError("N/D must have negative degree")
        d = D.degree
        tail: LaurentTail

        def gen(s: int) -> Fraction:
            acc = N[d - s] if d - s >= 0 else Fraction(0)
            for j in range(max(0, d - s + 1), d):
                acc -= D[j] * tail.coefficient(j - d + s)
            return acc / D.lead

        tail = cls(1, gen, rational=(N, D))
        return tail

    def _extend(self, k: int) -> None:
        with self._lock:
            while self.start + len(self._memo) <= k:
                self._memo.append(_frac(self._gen(self.start + len(self._memo))))

    def coefficient(self, k: int) -> Fraction:
        if k < self.start:
            return Fraction(0)
        idx = k - self.start
        if idx >= len(self._memo):
            self._extend(k)
        return self._memo[idx]

    def coefficients(self, K: int) -> list[Fraction]:
        """``[c_start, ..., c_K]``."""
        if K >= self.start:
            self.coefficient(K)
        return self._memo[: max(0, K - self.start + 1)]

    def leading_index(self, limit: int) -> int | None:
        """Smallest k <= limit with c_k != 0, or None if all vanish up to limit."""
        for k in range(self.start, limit + 1):
            if self.coefficient(k) != 0:
                return k
        return None

    def degree(self, limit: int) -> int | None:
        h = self.leading_index(limit)
        return None if h is None else -h


def tm_stream() -> LaurentTail:
    """The series sum_{i>=0} (-1)^{t_i} z^{-(i+1)}."""
    return LaurentTail(1, lambda k: 1 - 2 * tm_bit(k - 1))


TM_STREAM = tm_stream()


@dataclass(frozen=True)
class Residual:
    """Coefficients of ``Q*tail - P`` at indices ``start..K`` (index k <-> z^(-k))."""

    start: int
    coeffs: tuple[Fraction, ...]
    K: int
    q_degree: int = 0
    q_lead: Fraction = Fraction(1)

    def coefficient(self, k: int) -> Fraction:
        i = k - self.start
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def leading_index(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.start + i
        return None

    @property
    def degree(self) -> int | None:
        """Laurent degree, or None when every coefficient through K vanishes."""
        h = self.leading_index
        return None if h is None else -h

    @property
    def leading(self) -> Fraction:
        h = self.leading_index
        return Fraction(0) if h is None else self.coefficient(h)

    # Leading term of tail - P/Q, i.e. of the residual divided by Q.
    @property
    def error_degree(self) -> int | None:
        d = self.degree
        return None if d is None else d - self.q_degree

    @property
    def error_leading(self) -> Fraction:
        return self.leading / self.q_lead


def residual(P: Poly, Q: Poly, K: int | None = None, tail: LaurentTail | None = None) -> Residual:
    """Truncated expansion of ``Q(z)*tail(z) - P(z)`` through z^(-K).

    The tail defaults to the Thue-Morse stream; ``K`` defaults to
    ``2*deg(Q) + 16``.
    """
    tail = TM_STREAM if tail is None else tail
    dq = 0 if Q.is_zero() else Q.degree
    if K is None:
        K = 2 * dq + 16
    start = tail.start - dq
    if not P.is_zero():
        start = min(start, -P.degree)
    cs = tail.coefficients(K + dq)
    h = tail.start
    out = []
    for i in range(start, K + 1):
        acc = Fraction(0)
        for j, qj in enumerate(Q.coeffs):
            k = j + i
            if qj and k >= h:
                acc += qj * cs[k - h]
        if i <= 0:
            acc -= P[-i]
        out.append(acc)
    return Residual(start, tuple(out), K, dq, Q.lead if not Q.is_zero() else Fraction(1))
