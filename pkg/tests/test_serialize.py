import json
import random

from hypothesis import given, settings, strategies as st

from motzeta.acceptance import random_gf
from motzeta.genfun import gf_equal
from motzeta.grothring import GrothElement, L, opaque, product_symbol, torus_hypersurface
from motzeta.serialize import (
    dumps, element_from_json, element_to_json, frac_str, gf_from_json, gf_to_json, parse_fraction, symbol_from_json,
    symbol_table, symbol_to_json,
)


def test_symbol_round_trips():
    syms = [
        torus_hypersurface(2, [((1, 0), 1), ((0, 1), 1)], 0),
        torus_hypersurface(2, [((2, 0), 1), ((0, 3), 1)], 1, 6, (3, 2)),
        opaque("mu3", {7: 3}),
    ]
    syms.append(product_symbol(syms[1], syms[2]))
    table = {s.name: symbol_to_json(s) for s in syms}
    table.update({f.name: symbol_to_json(f) for s in syms for f in s.factors})
    for s in syms:
        back = symbol_from_json(s.name, json.loads(json.dumps(table[s.name])), table)
        assert back == s


def test_element_round_trip_and_fractions():
    e = GrothElement({opaque("A"): L - 1, opaque("B"): L ** -2 * 3})
    assert element_from_json(element_to_json(e), {}) == e
    assert frac_str(-5 / 1) == "-5" and parse_fraction("-5/6") * 6 == -5


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_gf_json_round_trip(seed):
    g = random_gf(random.Random(seed))
    doc = json.loads(dumps(gf_to_json(g)))
    back = gf_from_json(doc, symbol_table(g))
    assert back.canonical() == g.canonical()
    assert gf_equal(back, g, "symbolic")


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
