from fractions import Fraction

import pytest

from motzeta.acceptance import example_expected, example_fan_data, example_snc_data, mu_symbol
from motzeta.errors import MissingClass, ZetaError
from motzeta.genfun import RationalGF, candidate_pole_set, gf_equal, gf_substitute, series_numeric
from motzeta.grothring import POINT, GrothElement, L, opaque
from motzeta.newton import parse_polynomial
from motzeta.polycone import Cone
from motzeta.zeta import (
    DualGraph, GraphVertex, SncComponent, SncData, StratumData, dl_to_log_nu, poles_log_smooth, poles_newton,
    reducible_vertices, surface_reduce, zeta_from_fan_data, zeta_newton, zeta_snc,
)


def term(num, tp, den):
    return RationalGF.term(GrothElement.coerce(num), tp, den)


def snc(*comps, classes=None):
    keys = [frozenset({c.label}) for c in comps]
    return SncData(tuple(comps), tuple(keys), classes or {k: GrothElement.of(POINT) for k in keys})


def test_fan_single_smooth_stratum():
    s = StratumData("X", GrothElement.of(POINT), 1, Cone.orthant(1), (1,), (0,))
    assert gf_equal(zeta_from_fan_data([s]), term(1, 1, ((0, 1),)))
    assert zeta_from_fan_data([]) == RationalGF.zero()


def test_golden_blow_up_example():
    want = example_expected()
    assert zeta_snc(example_snc_data()).canonical().terms == want.terms
    assert zeta_from_fan_data(example_fan_data()).canonical().terms == want.terms
    assert poles_log_smooth(example_snc_data()) == {Fraction(0)}


def test_snc_single_components():
    e = opaque("E")
    d = SncData((SncComponent("E", 1, 0),), (frozenset({"E"}),), {frozenset({"E"}): GrothElement.of(e)})
    assert gf_equal(zeta_snc(d), term(GrothElement.of(e), 1, ((0, 1),)))
    for a in range(1, 5):
        mu = mu_symbol(a)
        d = SncData((SncComponent("E", a, 1 - a),), (frozenset({"E"}),), {frozenset({"E"}): GrothElement.of(mu)})
        want = term(GrothElement.of(mu, L ** (a - 1)), a, ((1 - a, a),))
        assert gf_equal(zeta_snc(d), want)
        assert gf_equal(gf_substitute(zeta_snc(d), -1), term(GrothElement.of(mu, L ** -1), a, ((1, a),)))


def test_snc_missing_class():
    e, f = frozenset({"E"}), frozenset({"F"})
    d = SncData((SncComponent("E", 1, 0), SncComponent("F", 2, 0)), (e, f, e | f), {e: GrothElement.of(POINT)})
    with pytest.raises(MissingClass):
        zeta_snc(d)


def test_snc_rejects_non_closed_intersections():
    with pytest.raises(ZetaError):
        SncData((SncComponent("E", 1, 0), SncComponent("F", 1, 0)), (frozenset({"E", "F"}),), {})


def test_log_smooth_poles():
    assert poles_log_smooth(snc(SncComponent("E", 6, 5), SncComponent("F", 1, 1))) == {Fraction(-5, 6), Fraction(-1)}
    assert poles_log_smooth(snc(SncComponent("E", 2, 1), SncComponent("F", 4, 2))) == {Fraction(-1, 2)}
    assert dl_to_log_nu(1, 3) == -2


def test_newton_examples():
    assert gf_equal(zeta_newton(parse_polynomial("x")), term(GrothElement.of(mu_symbol(1), L ** -1), 1, ((1, 1),)))
    for a in (2, 3):
        want = term(GrothElement.of(mu_symbol(a), L ** -1), a, ((1, a),))
        assert gf_equal(zeta_newton(parse_polynomial(f"x^{a}")), want, "numeric")
    # xy at q = 2: first coefficient 2^-2 * J_1 with J_1 = 4
    assert series_numeric(zeta_newton(parse_polynomial("x*y")), 2, 1)[1] == 1


def test_newton_poles():
    assert poles_newton(parse_polynomial("x^2+y^3")) == {Fraction(-1), Fraction(-5, 6)}
    assert poles_newton(parse_polynomial("x*y")) == {Fraction(-1)}
    assert poles_newton(parse_polynomial("x^2+y^2")) == {Fraction(-1)}
    for text in ("x^2+y^3", "x*y+x^3", "x^3+y^3"):
        f = parse_polynomial(text)
        assert candidate_pole_set(zeta_newton(f)) <= poles_newton(f)
        assert candidate_pole_set(zeta_newton(f, "local")) <= poles_newton(f)


def test_newton_rejects_constant_term():
    with pytest.raises(ZetaError):
        zeta_newton(parse_polynomial("x + 1"))


def cusp_graph():
    # minimal log resolution of x^2 + y^3 and its strict transform
    vs = (
        GraphVertex("E1", 2, 2, -3),
        GraphVertex("E2", 3, 3, -2),
        GraphVertex("E3", 6, 5, -1),
        GraphVertex("C", 1, 1, 0, is_exceptional=False),
    )
    return DualGraph(vs, (("E1", "E3"), ("E2", "E3"), ("C", "E3")))


def test_surface_rule_single_vertices():
    strict = DualGraph((GraphVertex("C", 1, 1, 0, is_exceptional=False),), ())
    assert surface_reduce(strict) == {Fraction(-1)}
    assert reducible_vertices(DualGraph((GraphVertex("E", 2, 3, -1),), ())) == ["E"]
    assert reducible_vertices(DualGraph((GraphVertex("E", 2, 3, -3),), ())) == []


@pytest.mark.known_question
def test_cusp_graph_under_both_rules():
    g = cusp_graph()
    assert surface_reduce(g, "paper") == {Fraction(-1)}
    assert surface_reduce(g, "mmp") == {Fraction(-1), Fraction(-5, 6)}
    # the reversed comparison is the one that agrees with the Newton polyhedron
    assert surface_reduce(g, "mmp") == poles_newton(parse_polynomial("x^2+y^3"))


def test_formula_against_jet_counts_small():
    from motzeta.oracle import oracle_zeta_coefficients

    for text, p, n in [("x^2+y^3", 5, 3), ("x*y", 3, 3), ("x*y+x^3", 3, 2)]:
        f = parse_polynomial(text)
        assert series_numeric(zeta_newton(f), p, n)[1:] == oracle_zeta_coefficients(f, p, n)
        assert series_numeric(zeta_newton(f, "local"), p, n)[1:] == oracle_zeta_coefficients(f, p, n, origin=True)
