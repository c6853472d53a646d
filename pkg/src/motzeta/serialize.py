"""JSON encoding of symbols, generating functions and the input formats.

Integers may be given as JSON numbers or decimal strings; outputs write
coefficients and rationals as decimal strings and exponents as numbers.
"""

import json
from fractions import Fraction
from importlib import resources

import jsonschema

from .errors import ZetaError
from .genfun import GFTerm, RationalGF
from .grothring import POINT, ClassSymbol, GrothElement, Laurent, opaque, product_symbol, torus_hypersurface
from .polycone import Cone
from .zeta import DualGraph, GraphVertex, SncComponent, SncData, StratumData, dl_to_log_nu

SCHEMA_VERSION = "1"


class InputError(ZetaError):
    """Invalid input document; ``pointer`` is a JSON pointer to the culprit."""

    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.message = message


def _int(x) -> int:
    return int(x)


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_fraction(s) -> Fraction:
    return Fraction(str(s))


# ---------------------------------------------------------------------------
# symbols and elements


def symbol_to_json(s: ClassSymbol) -> dict:
    if s.kind == "point":
        return {"kind": "point"}
    if s.kind == "torus_hypersurface":
        out = {
            "kind": "torus_hypersurface",
            "ambient_dim": s.ambient_dim,
            "terms": [{"exp": list(m), "coef": str(c)} for m, c in s.terms],
            "target": s.target,
        }
        if s.target == 1:
            out["mu_order"] = s.mu_order
            out["mu_weight"] = list(s.mu_weight)
        return out
    if s.kind == "opaque":
        out = {"kind": "opaque"}
        if s.count_table:
            out["counts"] = {str(q): str(c) for q, c in s.count_table}
        return out
    if s.kind == "product":
        return {"kind": "product", "factors": [f.name for f in s.factors]}
    raise ZetaError(f"unknown symbol kind {s.kind}")


def symbol_from_json(name: str, spec: dict, table: dict | None = None) -> ClassSymbol:
    kind = spec.get("kind", "opaque")
    if kind == "point":
        return POINT
    if kind == "torus_hypersurface":
        terms = [(tuple(_int(e) for e in t["exp"]), _int(t["coef"])) for t in spec["terms"]]
        w = spec.get("mu_weight")
        s = torus_hypersurface(
            _int(spec["ambient_dim"]), terms, _int(spec["target"]),
            _int(spec.get("mu_order", 0)), None if w is None else tuple(_int(x) for x in w),
        )
        if name and name != s.name:
            raise ZetaError(f"symbol {name!r} does not match its canonical name {s.name!r}")
        return s
    if kind == "opaque":
        return opaque(name, {_int(q): _int(c) for q, c in spec.get("counts", {}).items()})
    if kind == "product":
        table = table or {}
        fs = [resolve_symbol(f, table) for f in spec["factors"]]
        s = fs[0]
        for f in fs[1:]:
            s = product_symbol(s, f)
        return s
    raise ZetaError(f"unknown symbol kind {kind}")


def resolve_symbol(name: str, table: dict) -> ClassSymbol:
    """Look a name up in a symbol table; unlisted names are opaque."""
    if name == "pt":
        return POINT
    if name in table:
        return symbol_from_json(name, table[name], table)
    return opaque(name)


def laurent_to_json(c: Laurent) -> dict:
    return {str(e): str(a) for e, a in c.items()}


def laurent_from_json(d: dict) -> Laurent:
    return Laurent({_int(e): _int(a) for e, a in d.items()})


def element_to_json(e: GrothElement) -> dict:
    return {s.name: laurent_to_json(c) for s, c in e.items()}


def element_from_json(d: dict, table: dict) -> GrothElement:
    return GrothElement({resolve_symbol(name, table): laurent_from_json(c) for name, c in d.items()})


def gf_to_json(g: RationalGF) -> dict:
    g = g.canonical()
    return {
        "terms": [
            {
                "numerator": element_to_json(t.numerator),
                "t_power": t.t_power,
                "denominator": [[a, b] for a, b in t.denominator],
            }
            for t in g.terms
        ]
    }


def gf_from_json(d: dict, table: dict) -> RationalGF:
    return RationalGF(
        GFTerm(element_from_json(t["numerator"], table), _int(t["t_power"]),
               tuple((_int(a), _int(b)) for a, b in t["denominator"]))
        for t in d["terms"]
    )


def symbol_table(g: RationalGF) -> dict:
    out = {}
    for s in g.symbols():
        out[s.name] = symbol_to_json(s)
        for f in s.factors:
            out[f.name] = symbol_to_json(f)
    return out


def dumps(doc) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# input documents


def load_schema(kind: str) -> dict:
    text = resources.files("motzeta").joinpath("schemas", f"{kind}.v1.json").read_text()
    return json.loads(text)


def _pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path)


def validate(doc, kind: str):
    schema = load_schema(kind)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        e = errors[0]
        raise InputError(_pointer(e.absolute_path), e.message)


def _wrap(pointer, fn, *args):
    try:
        return fn(*args)
    except InputError:
        raise
    except (ZetaError, ValueError, KeyError, TypeError) as e:
        raise InputError(pointer, str(e)) from None


def fan_from_json(doc) -> list[StratumData]:
    validate(doc, "fan")
    table = doc.get("symbols", {})
    out = []
    for i, s in enumerate(doc["strata"]):
        ptr = f"/strata/{i}"
        et = [_int(x) for x in s["et"]]
        om = [_int(x) for x in s["omega"]]
        r = len(et)
        rays = [[_int(x) for x in ray] for ray in s["rays"]]
        if len(om) != r or any(len(ray) != r for ray in rays):
            raise InputError(ptr, "rays, et and omega must all have the same length")
        cone = _wrap(ptr + "/rays", Cone.from_rays, rays, r)
        cls = _wrap(ptr + "/class", element_from_json, s["class"], table)
        out.append(_wrap(ptr, StratumData, s.get("label", f"stratum{i}"), cls, r, cone, tuple(et), tuple(om)))
    return out


def snc_from_json(doc) -> SncData:
    validate(doc, "snc")
    table = doc.get("symbols", {})
    comps = []
    for i, c in enumerate(doc["components"]):
        n = _int(c["N"])
        if "nu_log" in c:
            nu = _int(c["nu_log"])
        else:
            nu = dl_to_log_nu(_int(c["nu_dl"]), n)
        comps.append(_wrap(f"/components/{i}", SncComponent, c["label"], n, nu))
    inter, classes = [], {}
    for i, j in enumerate(doc["intersections"]):
        key = frozenset(j["components"])
        inter.append(key)
        if "class" in j:
            classes[key] = _wrap(f"/intersections/{i}/class", element_from_json, j["class"], table)
    return _wrap("/intersections", SncData, tuple(comps), tuple(inter), classes)


def graph_from_json(doc) -> DualGraph:
    validate(doc, "graph")
    vs = []
    for i, v in enumerate(doc["vertices"]):
        vs.append(_wrap(f"/vertices/{i}", GraphVertex, v["label"], _int(v["N"]), _int(v["nu"]),
                        _int(v["self_intersection"]), _int(v.get("field_degree", 1)),
                        bool(v.get("is_exceptional", True))))
    labels = {v.label for v in vs}
    edges = []
    for i, e in enumerate(doc.get("edges", [])):
        if not set(e) <= labels:
            raise InputError(f"/edges/{i}", f"unknown vertex in edge {e}")
        edges.append(tuple(sorted(e)))
    return DualGraph(tuple(vs), tuple(edges))
