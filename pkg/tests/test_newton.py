from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from motzeta.errors import ParseError, UnknownVariable
from motzeta.newton import (
    Polynomial, all_face_data, check_nondegenerate, face_restriction, newton_polyhedron_of, parse_polynomial,
)
from motzeta.polycone import enumerate_faces, face_normal, support_value


def test_parse_examples():
    assert parse_polynomial("x^2 + y^3").as_dict() == {(2, 0): 1, (0, 3): 1}
    assert parse_polynomial("x*y - x*y + x", ["x", "y"]).as_dict() == {(1, 0): 1}
    assert parse_polynomial("3x^2y").as_dict() == {(2, 1): 3}
    assert parse_polynomial("(x+y)^2").as_dict() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert parse_polynomial("x1*x3 - 2").variable_names() == ["x1", "x3"]


@pytest.mark.parametrize("text,pos", [("x^", 2), ("x**2", 2), ("(x+y", 4), ("x + + ", 4)])
def test_parse_error_positions(text, pos):
    with pytest.raises(ParseError) as e:
        parse_polynomial(text)
    assert e.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as e:
        parse_polynomial("x + q")
    assert e.value.position == 4
    with pytest.raises(UnknownVariable):
        parse_polynomial("x*z", ["x", "y"])


coef = st.integers(-3, 3)


@settings(max_examples=60)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef.filter(bool), min_size=1, max_size=4))
def test_render_then_parse_round_trip(d):
    f = Polynomial.from_dict(d, 2, ("x", "y"))
    assert parse_polynomial(str(f), ["x", "y"]).as_dict() == f.as_dict()


def test_face_restrictions():
    f = parse_polynomial("x^2 + y^3")
    faces = enumerate_faces(newton_polyhedron_of(f))
    by_vertices = {(fc.vertex_set, fc.recession): fc for fc in faces}
    edge = by_vertices[(((0, 3), (2, 0)), ())]
    assert face_restriction(f, edge).as_dict() == f.as_dict()
    vx = by_vertices[(((2, 0),), ())]
    assert face_restriction(f, vx).as_dict() == {(2, 0): 1}
    g = parse_polynomial("x*y + x^3")
    for fc in enumerate_faces(newton_polyhedron_of(g)):
        u = face_normal(fc)
        kept = face_restriction(g, fc).as_dict()
        # oracle: keep a term iff it attains the support value in direction u
        m = support_value(newton_polyhedron_of(g), u)
        assert kept == {e: c for e, c in g.as_dict().items() if sum(a * b for a, b in zip(e, u)) == m}


def test_face_data_rho_and_weight():
    (vx, ray) = all_face_data(parse_polynomial("x^3"))
    assert (vx.rho, vx.weight) == (3, (1,))
    assert vx.X1.mu_order == 3 and vx.X1.mu_weight == (1,)
    data = {(d.face.vertex_set, d.face.recession): d for d in all_face_data(parse_polynomial("x^2+y^3"))}
    edge = data[(((0, 3), (2, 0)), ())]
    assert (edge.rho, edge.weight) == (6, (3, 2))
    top = [d for d in all_face_data(parse_polynomial("x*y")) if d.face.dim == 2][0]
    assert top.X1 is None and top.X0 is not None
    assert ray.X1 is None


def _singular_on_torus(f, q):
    """Exhaustive oracle over the prime field: f = 0 and grad f = 0 with all coordinates nonzero."""
    d = f.as_dict()
    n = f.n_vars

    def ev(dd, x):
        s = 0
        for e, c in dd.items():
            t = c
            for xi, ei in zip(x, e):
                t *= xi ** ei
            s += t
        return s % q

    grads = []
    for i in range(n):
        grads.append({tuple(a - (j == i) for j, a in enumerate(e)): c * e[i] for e, c in d.items() if e[i]})
    return any(ev(d, x) == 0 and all(ev(g, x) == 0 for g in grads) for x in product(range(1, q), repeat=n))


def test_nondegeneracy_examples():
    f = parse_polynomial("x^2 + y^3")
    rep = check_nondegenerate(f, q_list=(5, 7))
    assert rep.passed
    g = parse_polynomial("x^2 + 2x*y + y^2")
    rep = check_nondegenerate(g, q_list=(5,))
    assert not rep.passed
    assert {c.face.vertex_set for c in rep.failing_faces()} == {((0, 2), (2, 0))}
    assert _singular_on_torus(g, 5) and not _singular_on_torus(f, 5) and not _singular_on_torus(f, 7)
    assert check_nondegenerate(parse_polynomial("x")).passed
    assert rep.caveat


def test_compact_scope_ignores_unbounded_faces():
    # x^2 + xy^2: the unbounded face through (1,2) restricts to x*y^2, never singular on the torus
    f = parse_polynomial("x^2 + x*y^2")
    assert check_nondegenerate(f, "compact_faces").passed == check_nondegenerate(f, "all_faces").passed
    assert all(c.face.is_compact for c in check_nondegenerate(f, "compact_faces").checks)
