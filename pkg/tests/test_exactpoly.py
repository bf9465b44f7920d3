from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import P9, Q9, Q11, tm
from thuemorse.exactpoly import (
    NEG_INF,
    TM_STREAM,
    LaurentTail,
    NonInvertibleDenominator,
    Poly,
    denominator_lcm,
    format_poly,
    integer_poly,
    eval_int,
    parse_poly,
    poly_derivative,
    poly_eval,
    poly_eval_mod,
    poly_gcd,
    residual,
    substitute,
    tm_bit,
    tm_bit_parity,
)
from thuemorse.numtheory import valuation
from thuemorse.tmcf import canonical

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(fractions, max_size=8).map(Poly)
nonzero_polys = polys.filter(lambda P: not P.is_zero())


def test_tm_bit_examples():
    assert [tm_bit(i) for i in range(7)] == [0, 1, 1, 0, 1, 0, 0]
    assert tm_bit(0) == 0
    assert tm_bit(6) == 0
    assert tm_bit(2**20) == 1


@given(st.integers(0, 10**5))
def test_tm_bit_recurrences(n):
    assert tm_bit(2 * n) == tm_bit(n)
    assert tm_bit(2 * n + 1) == 1 - tm_bit(n)
    assert tm_bit(n) == tm(n) == tm_bit_parity(n)


def test_tm_bit_rejects_negative():
    with pytest.raises(ValueError):
        tm_bit(-1)


def test_stream_coefficients_are_signs():
    coeffs = TM_STREAM.coefficients(500)
    # list starts at z^-1
    assert all(c in (1, -1) for c in coeffs)
    assert coeffs == [1 - 2 * tm(i) for i in range(500)]
    assert TM_STREAM.coefficient(37) == coeffs[36]
    assert TM_STREAM.coefficient(0) == 0


def test_zero_poly_degree():
    assert Poly().degree == NEG_INF
    assert Poly([0, 0]).is_zero()
    assert Poly.const(0).degree == NEG_INF


def test_evaluation_examples():
    assert poly_eval(parse_poly(Q9), 1) == 6
    assert poly_eval(Poly(), 12345) == 0
    assert poly_eval(parse_poly(P9), 4) == 53804
    assert poly_eval(parse_poly(Q9), 4) == 307290


def test_modular_evaluation():
    assert poly_eval_mod(parse_poly(Q9), 16, 3, 3) == 0
    assert poly_eval_mod(parse_poly(Q11), 1, 5, 1) == 0
    with pytest.raises(NonInvertibleDenominator):
        poly_eval_mod(parse_poly(Q11), 0, 3, 1)


@given(st.lists(st.integers(-30, 30), max_size=8), st.integers(-100, 100), st.sampled_from([3, 5, 7]), st.integers(1, 4))
def test_modular_evaluation_matches_exact(coeffs, x, p, m):
    P = Poly(coeffs)
    assert poly_eval_mod(P, x, p, m) == int(poly_eval(P, x)) % p**m


def test_derivative_examples():
    assert poly_eval(poly_derivative(parse_poly(Q9)), 1) == 11
    assert poly_derivative(Poly.const(7)).is_zero()
    assert valuation(poly_eval(poly_derivative(parse_poly(Q11)), 1), 5).value == 0


def test_substitute_examples():
    assert substitute(parse_poly("z^2+1"), "square") == parse_poly("z^4+1")
    assert substitute(parse_poly("z+1"), "negate") == parse_poly("-z+1")
    assert substitute(canonical(5).Qhat, "square") == parse_poly("z^10+z^8+z^6+z^4+z^2+1")
    with pytest.raises(ValueError):
        substitute(Poly([1]), "cube")


@given(nonzero_polys)
def test_substitute_properties(P):
    assert substitute(substitute(P, "negate"), "negate") == P
    assert substitute(P, "square").degree == 2 * P.degree
    assert substitute(P, "negate").degree == P.degree
    x = Fraction(3, 7)
    assert substitute(P, "square")(x) == P(x * x)


def test_denominator_lcm_examples():
    assert denominator_lcm(parse_poly(Q9)) == 1
    assert denominator_lcm(parse_poly(Q11)) == 3
    assert denominator_lcm(Poly()) == 1


@given(polys)
def test_denominator_lcm_clears(P):
    d = denominator_lcm(P)
    scaled = P * Poly.const(d)
    assert all(c.denominator == 1 for c in scaled.coeffs)
    assert scaled / d == P
    coeffs, d2 = integer_poly(P)
    assert d2 == d and eval_int(coeffs, 5) == scaled(5)


@given(polys, nonzero_polys)
def test_divmod_identity(A, B):
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


@given(polys, polys, polys)
def test_ring_laws(A, B, C):
    assert (A + B) * C == A * C + B * C
    assert A * B == B * A
    assert A - A == Poly()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd(A, B, C):
    g = poly_gcd(A * C, B * C)
    assert g.is_monic()
    assert ((A * C) % g).is_zero() and ((B * C) % g).is_zero()
    assert (g % (C / C.lead)).is_zero()


def test_parse_other_variable():
    assert parse_poly("x^2+2/3*x") == parse_poly("z^2+2/3*z")


def test_format_examples():
    assert format_poly(parse_poly(P9)) == P9
    assert format_poly(Poly()) == "0"
    assert format_poly(Poly([Fraction(-1, 3), 0, 1])) == "z^2-1/3"
    assert format_poly(Poly([0, -1])) == "-z"


@given(polys)
def test_format_parse_round_trip(P):
    text = format_poly(P)
    assert parse_poly(text) == P
    assert format_poly(parse_poly(text)) == text


@pytest.mark.parametrize("bad", ["", "z^", "2**z", "z^-1", "x+z", "1/0*z", "z z"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_poly(bad)


def _long_division(N, D, K):
    # coefficients of N/D in powers of 1/z, by naive series inversion
    n, d = N.coeffs, D.coeffs
    dd = len(d) - 1
    out = {}
    rem = {i: n[i] for i in range(len(n))}
    for k in range(1, K + 1):
        top = dd - k  # coefficient of z^(-k) pairs with z^(dd-k) of the remainder
        c = rem.get(top, Fraction(0)) / d[dd]
        out[k] = c
        for j, dj in enumerate(d):
            idx = j - k
            rem[idx] = rem.get(idx, Fraction(0)) - c * dj
    return [out[k] for k in range(1, K + 1)]


@given(st.lists(fractions, min_size=1, max_size=4), st.lists(fractions, min_size=2, max_size=6))
def test_rational_tail_matches_long_division(n, d):
    N, D = Poly(n), Poly(d)
    if D.is_zero() or D.degree < 1 or N.is_zero() or N.degree >= D.degree:
        return
    tail = LaurentTail.from_rational(N, D)
    assert tail.coefficients(12) == _long_division(N, D, 12)


def test_residual_examples():
    r = residual(parse_poly(P9), parse_poly(Q9), 25)
    # error of the fraction itself: f - P/Q = 6 z^-19 + ...
    assert r.error_degree == -19 and r.error_leading == 6
    r = residual(Poly([1]), parse_poly("z+1"), 10)
    assert (r.degree, r.leading) == (-2, -2)
    r = residual(Poly([1]), Poly.z(), 10)
    assert (r.degree, r.leading) == (-1, -1)


def test_residual_against_direct_convolution():
    P, Q = parse_poly(P9), parse_poly(Q9)
    K = 30
    f = [0] + [1 - 2 * tm(i) for i in range(K + Q.degree + 1)]
    # coefficient of z^(-k) in Q*f is sum_j Q_j f_{k+j}
    direct = [sum(Q[j] * f[k + j] for j in range(Q.degree + 1)) for k in range(1, K + 1)]
    r = residual(P, Q, K)
    assert [r.coefficient(k) for k in range(1, K + 1)] == direct


@pytest.mark.parametrize("n", range(1, 41))
def test_canonical_residual_degree(n):
    c = canonical(n)
    r = residual(c.Phat, c.Qhat)
    assert r.degree is None or r.degree <= -(n + 1)
