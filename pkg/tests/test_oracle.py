from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from motzeta.errors import BudgetExceeded
from motzeta.grothring import Laurent
from motzeta.newton import Polynomial, parse_polynomial
from motzeta.oracle import brute_cone_sum, count_jets, oracle_zeta_coefficients, verify
from motzeta.polycone import Cone


def test_count_jets_examples():
    assert count_jets(parse_polynomial("x"), 3, 2) == 1
    assert count_jets(parse_polynomial("x^2"), 5, 2) == 10
    assert count_jets(parse_polynomial("x*y"), 2, 1) == 4


def test_zeta_coefficient_examples():
    thirds = [Fraction(1, 3 ** n) for n in range(1, 5)]
    assert oracle_zeta_coefficients(parse_polynomial("x"), 3, 4) == thirds
    assert oracle_zeta_coefficients(parse_polynomial("x^2"), 5, 4) == [0, Fraction(2, 5), 0, Fraction(2, 25)]
    assert oracle_zeta_coefficients(parse_polynomial("x*y"), 2, 1)[0] == 1


@pytest.mark.parametrize("text,p,n", [("x^2", 3, 2), ("x*y", 2, 2), ("x^2+y^3", 2, 2), ("x*y+x^3", 3, 1)])
def test_fast_count_matches_brute(text, p, n):
    f = parse_polynomial(text)
    assert count_jets(f, p, n) == count_jets(f, p, n, method="brute")
    assert count_jets(f, p, n, origin=True) == count_jets(f, p, n, origin=True, method="brute")


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any), st.integers(-2, 2).filter(bool),
                       min_size=1, max_size=3), st.sampled_from([2, 3]), st.integers(1, 2))
def test_fast_count_matches_brute_random(d, p, n):
    f = Polynomial.from_dict(d, 2, ("x", "y"))
    assert count_jets(f, p, n) == count_jets(f, p, n, method="brute")


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        count_jets(parse_polynomial("x*y+z^2"), 7, 5, budget=1000, method="brute")


def test_brute_cone_sum_geometric():
    got = brute_cone_sum(Cone.orthant(1), (2,), (3,), 6)
    assert got == [Laurent(), Laurent(), Laurent.mono(-2), Laurent(), Laurent(), Laurent.mono(-4)]
    got = brute_cone_sum(Cone.orthant(2), (1, 1), (1, 1), 3)
    lm1 = Laurent({1: 1, 0: -1})
    assert got == [Laurent(), lm1 * Laurent.mono(-2), lm1 * Laurent.mono(-3) * 2]


def test_verify_reports():
    rep = verify(parse_polynomial("x"), 3, 5)
    assert rep.status == "checked" and rep.overall and len(rep.checks) == 5
    rep = verify(parse_polynomial("x^2+y^2"), 2, 3)
    assert rep.status == "inapplicable" and not rep.checks
    assert "F_2" in rep.note
