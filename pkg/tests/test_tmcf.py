from fractions import Fraction

import pytest

from conftest import P9, Q9, Q11
from thuemorse.cfseries import ConvergentPair, canonicalize, is_convergent
from thuemorse.exactpoly import parse_poly, substitute
from thuemorse.tmcf import (
    BetaTable,
    CanonicalTable,
    NotAConvergent,
    ShapeViolation,
    beta,
    canonical,
    double,
    implied_quotient,
    structure_report,
)


def P(text):
    return parse_poly(text)


def test_beta_examples():
    assert beta(3) == -1
    assert beta(4) == 1
    assert beta(5) == 1
    assert beta(11) == Fraction(-1, 3)
    with pytest.raises(ValueError):
        beta(2)


@pytest.mark.parametrize("n", range(2, 101))
def test_beta_identities(n):
    # beta_{2n+1} beta_{2n} + beta_{n+1} = 0 and the even-index rule
    assert beta(2 * n + 1) != 0 and beta(2 * n + 2) != 0
    assert beta(2 * n + 1) * beta(2 * n) + beta(n + 1) == 0
    assert beta(2 * n + 2) == 1 + (-1) ** n - beta(2 * n + 1)


def test_beta_nonzero_to_200():
    assert all(beta(n) != 0 for n in range(3, 201))


def test_reference_convergents():
    assert (canonical(9).Phat, canonical(9).Qhat) == (P(P9), P(Q9))
    assert canonical(9).Qhat == P("z+1") * P("z^8-z^6+z^2+2")
    assert canonical(6).Qhat == P("z^6+z^4")
    assert canonical(6).Phat == P("z-1") * P("z^4-2")
    assert canonical(5).Phat == P("z^4-z^2-1")
    assert canonical(5).Qhat == P("z+1") * P("z^4+z^2+1")
    assert canonical(7).Phat == P("z^6-2*z^4-z^2+3")
    assert canonical(11).Qhat == P(Q11)


@pytest.mark.parametrize("n", range(1, 41))
def test_canonical_shape(n):
    c = canonical(n)
    assert c.Qhat.degree == n and c.Phat.degree == n - 1
    assert c.Phat.is_monic()
    assert is_convergent(c.Phat, c.Qhat)


def test_double_examples():
    z1 = ConvergentPair(P("1"), P("z+1"))
    d = double(z1)
    assert (d.P, d.Q) == (P("z-1"), P("z^2+1"))
    d = double(d)
    assert (d.P, d.Q) == (P("z-1") * P("z^2-1"), P("z^4+1"))
    d = double(ConvergentPair(P("z^2-2"), P("z^3+z^2")))
    assert (d.P, d.Q) == (P("z-1") * P("z^4-2"), P("z^6+z^4"))


@pytest.mark.parametrize("n", range(2, 21))
def test_doubling_reaches_index_2n(n):
    d = canonicalize(double(canonical(n).pair))
    assert (d.P, d.Q) == (canonical(2 * n).Phat, canonical(2 * n).Qhat)


def test_double_rejects_non_convergent():
    with pytest.raises(NotAConvergent):
        double(ConvergentPair(P("z"), P("z^2+1")))


def test_structure_examples():
    assert canonical(8).Qhat == P("z^8+1") == substitute(canonical(4).Qhat, "square")
    rep = structure_report(5)
    assert canonical(10).Qhat == substitute(canonical(5).Qhat, "square")
    assert rep.even_part.degree == 4
    assert rep.even_part == P("z^4-z^3+z+2")
    structure_report(2)
    assert canonical(3).Qhat == P("z+1") * P("z^2")
    assert canonical(4).Qhat == substitute(canonical(2).Qhat, "square")


@pytest.mark.parametrize("n", range(2, 31))
def test_structure_holds(n):
    rep = structure_report(n)
    assert set(rep.quotients) == set(range(3, 2 * n + 1))


def test_implied_quotients_alternate():
    for k in range(3, 30):
        assert implied_quotient(k) == (P("z+1") if k % 2 else P("z-1"))


def test_corrupted_beta_breaks_structure():
    table = CanonicalTable()
    table.beta.corrupt(7, Fraction(5))
    assert table.beta(7) == 5
    with pytest.raises(ShapeViolation):
        structure_report(4, table)
    assert not is_convergent(table(9).Phat, table(9).Qhat)


def test_beta_table_independent_instances():
    a, b = BetaTable(), BetaTable()
    a.corrupt(9, Fraction(2))
    assert b(9) == beta(9) != 2
