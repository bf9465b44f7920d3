import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.ntheory import discrete_log as sympy_dlog, is_primitive_root as sympy_primroot, n_order

from conftest import Q9
from thuemorse.exactpoly import parse_poly, poly_eval_mod
from thuemorse.numtheory import (
    NoSolution,
    NotCoprime,
    NotPrimitiveRoot,
    PrimePower,
    SingularRoot,
    ZeroInput,
    discrete_log,
    dlog2,
    first_exact_index,
    hensel_root,
    is_prime,
    is_primitive_root,
    prime_factors,
    solve_double_exp,
    tower_mod,
    valuation,
)

QHAT9 = parse_poly(Q9)


@given(st.integers(0, 10**6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_large_and_limit():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    with pytest.raises(ValueError):
        is_prime(2**64 + 13)


@given(st.integers(2, 10**6))
def test_prime_factors(n):
    assert prime_factors(n) == sorted(sympy.primefactors(n))


def test_prime_power():
    pp = PrimePower(3, 4)
    assert (pp.modulus, pp.phi) == (81, 54)
    with pytest.raises(ValueError):
        PrimePower(9, 2)
    with pytest.raises(ValueError):
        PrimePower(3, 0)


def test_valuation_examples():
    assert valuation(6, 3).value == 1 and valuation(6, 3).exact_div
    assert valuation(10, 5).exact_div
    assert valuation(1, 7).value == 0
    assert valuation(Fraction(10, 9), 3).value == -2
    with pytest.raises(ZeroInput):
        valuation(0, 3)


@given(st.integers(-(10**9), 10**9).filter(bool), st.sampled_from([2, 3, 5, 7, 13]))
def test_valuation_matches_sympy(x, p):
    assert valuation(x, p).value == sympy.multiplicity(p, abs(x))


def test_primitive_root_examples():
    assert is_primitive_root(2, PrimePower(3, 2))
    assert not is_primitive_root(2, PrimePower(7, 2))
    assert not is_primitive_root(2, PrimePower(113, 2))
    with pytest.raises(NotCoprime):
        is_primitive_root(6, PrimePower(3, 2))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 37, 61, 113])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_primitive_root_matches_sympy(p, m):
    for g in range(2, 12):
        if g % p:
            assert is_primitive_root(g, PrimePower(p, m)) == sympy_primroot(g, p**m)


def _roots_mod(P, p, m):
    return [x for x in range(p**m) if poly_eval_mod(P, x, p, m) == 0]


def test_hensel_examples():
    assert hensel_root(QHAT9, PrimePower(3, 3), 1).root == 16
    assert hensel_root(QHAT9, PrimePower(3, 2), 1).root == 7
    lift = hensel_root(QHAT9, PrimePower(3, 1), 1)
    assert lift.root == 1 and lift.differs_mod_p2


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_hensel_unique_lift(m):
    pp = PrimePower(3, m)
    lifted = hensel_root(QHAT9, pp, 1).root
    roots = [x for x in _roots_mod(QHAT9, 3, m) if x % 3 == 1]
    assert roots == [lifted]


def test_hensel_errors():
    with pytest.raises(ValueError):
        hensel_root(QHAT9, PrimePower(3, 3), 0)
    with pytest.raises(SingularRoot):
        hensel_root(parse_poly("z^2-2*z+1"), PrimePower(3, 3), 1)


def test_tower_examples():
    assert tower_mod(2, 3, PrimePower(3, 2)) == 4
    assert tower_mod(2, 0, PrimePower(3, 5)) == 2
    assert tower_mod(2, 8, PrimePower(3, 3)) == 16
    with pytest.raises(NotCoprime):
        tower_mod(6, 2, PrimePower(3, 2))


@pytest.mark.parametrize("m", range(1, 7))
def test_tower_periodic(m):
    pp = PrimePower(3, m)
    L = pp.phi
    odd, n0 = L, 0
    while odd % 2 == 0:
        odd //= 2
        n0 += 1
    T = n_order(2, odd) if odd > 1 else 1
    for a in (2, 4, 5, 7, 10, 11):
        for n in range(n0, n0 + 12):
            assert tower_mod(a, n, pp) == tower_mod(a, n + T, pp) == pow(a, 2**n, pp.modulus)


def test_dlog2_examples():
    assert dlog2(4, PrimePower(3, 2)) == 2
    assert dlog2(16, PrimePower(3, 3)) == 4
    with pytest.raises(NotPrimitiveRoot):
        dlog2(4, PrimePower(7, 2))


@pytest.mark.parametrize("m", range(2, 7))
def test_dlog2_structure(m):
    pp = PrimePower(3, m)
    for x in range(1, pp.modulus, 3):
        if x % 3 == 1 and (x - 1) % 9:
            k = dlog2(x, pp)
            assert pow(2, k, pp.modulus) == x
            assert k % 2 == 0 and k % 3 != 0


@given(st.integers(1, 10**9), st.sampled_from([(3, 5), (5, 4), (11, 3), (13, 3), (29, 2), (61, 3)]))
def test_discrete_log_matches_sympy(e, pm):
    p, m = pm
    mod = p**m
    g = next(g for g in range(2, 100) if sympy_primroot(g, mod))
    order = (p - 1) * p ** (m - 1)
    h = pow(g, e, mod)
    got = discrete_log(g, h, mod, order)
    assert got == e % order == sympy_dlog(mod, h, g)


def test_solve_double_exp_examples():
    sol = solve_double_exp(16, PrimePower(3, 3))
    assert (sol.n, sol.period) == (2, 6)
    assert solve_double_exp(7, PrimePower(3, 2)).n == 2
    with pytest.raises(NoSolution):
        solve_double_exp(10, PrimePower(3, 3))  # 9 divides 10 - 1
    with pytest.raises(NoSolution):
        solve_double_exp(5, PrimePower(3, 3))


def _brute_double_exp(x, mod, limit):
    return next(n for n in range(1, limit) if pow(2, 2**n, mod) == x % mod)


def test_solve_double_exp_random():
    rng = random.Random(20240611)
    for _ in range(100):
        m = rng.choice([3, 4, 5])
        pp = PrimePower(3, m)
        k = rng.randrange(1, pp.modulus // 3)
        if k % 3 == 0:
            k += 1
        x = 1 + 3 * k
        sol = solve_double_exp(x, pp)
        assert tower_mod(2, sol.n, pp) == x % pp.modulus
        assert tower_mod(2, sol.n + 3 * sol.period, pp) == x % pp.modulus
        assert sol.n == _brute_double_exp(x, pp.modulus, 3 * pp.phi)


def test_solve_double_exp_other_bases():
    for base, p, m in ((3, 5, 3), (30, 29, 2), (90, 13, 3), (45, 11, 3)):
        pp = PrimePower(p, m)
        n0 = first_exact_index(base, p)
        x = tower_mod(base, n0 + 3, pp)
        sol = solve_double_exp(x, pp, base=base)
        assert tower_mod(base, sol.n, pp) == x
        assert sol.offset == n0


def test_first_exact_index():
    assert first_exact_index(2, 3) == 1
    assert first_exact_index(30, 29) == 0
    assert first_exact_index(90, 13) == 1
    assert first_exact_index(10, 3) is None  # 9 divides 10 - 1


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_power_of_two_residues(m):
    # even t not divisible by 3 is a power of 2 modulo 2 * 3^m, reached by n <= 2 * 3^(m-1)
    mod = 2 * 3**m
    bound = 2 * 3 ** (m - 1)
    for t in range(2, mod, 2):
        if t % 3 == 0:
            continue
        hits = [n for n in range(1, bound + 1) if pow(2, n, mod) == t]
        assert hits
        k = dlog2(t % 3**m, PrimePower(3, m)) or bound
        assert k == hits[0]
