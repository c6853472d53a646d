from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from motzeta.errors import PreconditionViolated, ZeroEt
from motzeta.genfun import (
    GFTerm, RationalGF, candidate_pole_set, cone_series, expand, gf_add, gf_equal, gf_mul, gf_substitute,
    series_numeric,
)
from motzeta.grothring import POINT, GrothElement, L
from motzeta.oracle import brute_cone_sum
from motzeta.polycone import Cone

ONE = GrothElement.scalar(1)


def term(num, tp, den):
    return RationalGF.term(GrothElement.coerce(num), tp, den)


def pt(c):
    return GrothElement.of(POINT, c)


GEOM = term(1, 1, ((0, 1),))  # T/(1-T)


def test_add_and_multiply():
    assert gf_add(GEOM, RationalGF.zero()) == GEOM
    sq = gf_mul(GEOM, GEOM)
    assert gf_equal(sq, term(1, 2, ((0, 1), (0, 1))))
    s = gf_add(GEOM, GEOM)
    assert len(s.terms) == 2
    assert expand(s, 3) == [pt(2)] * 3


def test_substitution():
    g = term(1, 1, ((1, 1),))
    assert gf_equal(gf_substitute(g, 1), term(L, 1, ((0, 1),)))
    assert gf_equal(gf_substitute(gf_substitute(g, 1), -1), g)
    h = term(L ** -1, 2, ((5, 6),))
    expected = term(L ** -3, 2, ((11, 6),))
    got = gf_substitute(h, -1)
    assert gf_equal(got, expected)
    # series oracle: coefficient of T^n is multiplied by L^-n
    assert [c.shift(-n) for n, c in enumerate(expand(h, 12), 1)] == expand(got, 12)


def test_expand_examples():
    assert expand(GEOM, 3) == [pt(1)] * 3
    g = term(L ** -1, 1, ((1, 1),))
    assert expand(g, 2) == [pt(L ** -1), pt(L ** -2)]
    g = term((L - 1) * L ** -2, 2, ((1, 1), (1, 1)))
    assert expand(g, 3) == [pt(0), pt((L - 1) * L ** -2), pt(2 * (L - 1) * L ** -3)]


def test_candidate_poles():
    assert candidate_pole_set(term(1, 1, ((5, 6), (1, 1)))) == {Fraction(-5, 6), Fraction(-1)}
    assert candidate_pole_set(term(L + 1, 2, ())) == set()
    assert candidate_pole_set(term(1, 0, ((2, 4),))) == {Fraction(-1, 2)}


def test_equality_modes():
    assert gf_equal(GEOM, gf_add(term(1, 1, ()), term(1, 2, ((0, 1),))))
    # T/(1-T) against (T + T^2)/(1-T^2): same series, different factor sets
    a = GEOM
    b = gf_add(term(1, 1, ((0, 2),)), term(1, 2, ((0, 2),)))
    assert gf_equal(a, b, "numeric")
    assert not gf_equal(a, b, "symbolic")


def test_cone_series_orthant():
    g = cone_series(Cone.orthant(2), (1, 1), (1, 1))
    assert gf_equal(g, term((L - 1) * L ** -2, 2, ((1, 1), (1, 1))))
    brute = brute_cone_sum(Cone.orthant(2), (1, 1), (1, 1), 12)
    assert [c.coefficient(POINT) for c in expand(g, 12)] == brute


def test_cone_series_boundary_e_t():
    g = cone_series(Cone.orthant(2), (1, 1), (1, 0))
    assert expand(g, 1) == [pt(L ** -1)]
    assert all(b >= 1 for t in g.terms for _, b in t.denominator)


def test_cone_series_one_dim():
    # M = N, omega = (nu), e_t = (N): T^(jN) has coefficient L^(-j nu)
    g = cone_series(Cone.orthant(1), (2,), (3,))
    got = expand(g, 9)
    for n, c in enumerate(got, 1):
        assert c == (pt(L ** (-2 * (n // 3))) if n % 3 == 0 else pt(0))


def test_cone_series_preconditions():
    with pytest.raises(ZeroEt):
        cone_series(Cone.orthant(2), (1, 1), (0, 0))
    with pytest.raises(PreconditionViolated):
        cone_series(Cone.orthant(2), (1, 2), (1, 0))  # omega pairs to 2 with the flat ray
    with pytest.raises(PreconditionViolated):
        cone_series(Cone.orthant(2), (1, 1), (-1, 1))


def test_gfterm_rejects_zero_b():
    with pytest.raises(Exception):
        GFTerm(ONE, 1, ((1, 0),))


def test_series_numeric_matches_expand():
    g = term(L ** -1, 1, ((1, 1),))
    assert series_numeric(g, 3, 3) == [0, Fraction(1, 3), Fraction(1, 9), Fraction(1, 27)]


small_terms = st.builds(
    lambda c, e, tp, den: term(c * L ** e, tp, tuple(den)),
    st.integers(-3, 3).filter(bool), st.integers(-2, 2), st.integers(0, 3),
    st.lists(st.tuples(st.integers(-2, 3), st.integers(1, 3)), max_size=2),
)
gfs = st.lists(small_terms, max_size=3).map(lambda ts: sum(ts, RationalGF.zero()))


@settings(max_examples=50, deadline=None)
@given(gfs, gfs)
def test_expand_is_additive_and_multiplicative(a, b):
    assert expand(gf_add(a, b), 6) == [x + y for x, y in zip(expand(a, 6), expand(b, 6))]
    # Cauchy product, including constant terms
    sa, sb, sab = series_numeric(a, 3, 6), series_numeric(b, 3, 6), series_numeric(gf_mul(a, b), 3, 6)
    for n in range(7):
        assert sab[n] == sum(sa[i] * sb[n - i] for i in range(n + 1))


@settings(max_examples=50, deadline=None)
@given(gfs)
def test_canonical_form_is_stable(g):
    c = g.canonical()
    assert c.canonical() == c
    assert gf_equal(c, g)
    assert gf_equal(gf_substitute(gf_substitute(g, 2), -2), g)
