"""Command line front end.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

import argparse
import json
import sys

from . import __version__
from .errors import ParseError, ZetaError
from .genfun import candidate_pole_set, expand, series_numeric
from .newton import check_nondegenerate, parse_polynomial
from .oracle import verify
from .serialize import (
    SCHEMA_VERSION, InputError, dumps, element_to_json, fan_from_json, frac_str, gf_to_json,
    graph_from_json, snc_from_json, symbol_table,
)
from .zeta import poles_log_smooth, poles_newton, reducible_vertices, surface_reduce, zeta_from_fan_data, zeta_newton, zeta_snc

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

LC_CAVEAT = (
    "open question: the inequality direction of the surface reduction rule is unsettled; "
    "'paper' drops exceptional curves with (E_i)^2 >= -2[k_i:k], 'mmp' drops those with (E_i)^2 <= -2[k_i:k]"
)


def _poles(ps):
    return [frac_str(p) for p in sorted(ps)]


def _q_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _emit(doc, args, text_lines):
    out = sys.stdout
    to_stdout = getattr(args, "json", None) == "-"
    # with --json - stdout carries only the JSON document
    for line in [] if to_stdout else text_lines:
        print(line, file=out)
    if getattr(args, "json", None):
        payload = dumps(doc)
        if args.json == "-":
            out.write(payload)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload)


def _base_doc(command, inp):
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": inp, "caveats": []}


def cmd_newton(args) -> int:
    f = parse_polynomial(args.poly)
    local = args.local
    qs = _q_list(args.q) if args.q else []
    inp = {"polynomial": args.poly, "variables": f.variable_names(), "scope": "local" if local else "global"}
    doc = _base_doc("newton", inp)
    doc["normalization"] = "Z_f"
    lines = [f"f = {f}", f"variables: {', '.join(f.variable_names())}"]
    if f.has_constant_term():
        raise ZetaError("f must vanish at the origin (no constant term)")
    scope = "compact_faces" if local else "all_faces"
    check_fields = qs or [5, 7]
    nd = check_nondegenerate(f, scope, check_fields)
    doc["nondegeneracy"] = {
        "fields": list(nd.fields),
        "scope": scope,
        "failing_faces": [
            {"vertices": [list(v) for v in c.face.vertex_set], "recession": list(c.face.recession),
             "fields": sorted(q for q, ok in c.passed.items() if not ok)}
            for c in nd.failing_faces()
        ],
    }
    doc["caveats"].append(nd.caveat)
    if nd.passed:
        lines.append(f"non-degeneracy: no counterexample over F_q for q in {list(nd.fields)}")
    else:
        lines.append("non-degeneracy: FAILED on some faces; the formula below may not apply")
        doc["caveats"].append("a face restriction has a singular point on the torus over some tested field")
        for c in nd.failing_faces():
            lines.append(f"  face {list(c.face.vertex_set)} + recession {list(c.face.recession)}")
    g = zeta_newton(f, "local" if local else "global")
    doc["result"] = gf_to_json(g)
    doc["symbols"] = symbol_table(g)
    lines.append(("Z_f,0(T) = " if local else "Z_f(T) = ") + str(g.canonical()))
    if args.poles:
        ps = poles_newton(f)
        doc["poles"] = _poles(ps)
        lines.append("candidate poles: {" + ", ".join(_poles(ps)) + "}")
    if args.series:
        k = args.series
        if qs:
            doc["series"] = {str(q): [frac_str(x) for x in series_numeric(g, q, k)[1:]] for q in qs}
            for q in qs:
                lines.append(f"series at q={q}: " + ", ".join(doc["series"][str(q)]))
        else:
            coeffs = expand(g, k)
            doc["series"] = {"symbolic": [element_to_json(c) for c in coeffs]}
            for i, c in enumerate(coeffs, 1):
                lines.append(f"  T^{i}: {c}")
    code = EXIT_OK
    if args.verify:
        p, nmax = args.verify
        rep = verify(f, p, nmax, local=local)
        doc["verification"] = {
            "target": rep.target, "status": rep.status, "overall": rep.overall, "note": rep.note,
            "budget_spent": rep.budget_spent,
            "checks": [{"n": c.n, "formula": frac_str(c.lhs), "oracle": frac_str(c.rhs), "pass": c.passed}
                       for c in rep.checks],
        }
        lines.append(f"verification ({rep.status}): {rep.target}")
        if rep.note:
            lines.append("  " + rep.note)
        for c in rep.checks:
            lines.append(f"  n={c.n}: formula {frac_str(c.lhs)}  oracle {frac_str(c.rhs)}  {'ok' if c.passed else 'MISMATCH'}")
        if rep.status == "checked" and not rep.overall:
            code = EXIT_VERIFY
    _emit(doc, args, lines)
    return code


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError("/", f"invalid JSON: {e}") from None
    except OSError as e:
        raise InputError("/", f"cannot read {path}: {e.strerror}") from None


def cmd_snc(args) -> int:
    raw = _load(args.file)
    d = snc_from_json(raw)
    g = zeta_snc(d)
    doc = _base_doc("snc", raw)
    doc["normalization"] = "Z_X_omega"
    doc["result"] = gf_to_json(g)
    doc["symbols"] = symbol_table(g)
    ps = poles_log_smooth(d)
    doc["poles"] = _poles(ps)
    lines = ["Z_X,w(T) = " + str(g.canonical()), "candidate poles: {" + ", ".join(_poles(ps)) + "}"]
    _emit(doc, args, lines)
    return EXIT_OK


def cmd_fan(args) -> int:
    raw = _load(args.file)
    strata = fan_from_json(raw)
    g = zeta_from_fan_data(strata)
    doc = _base_doc("fan", raw)
    doc["normalization"] = "Z_X_omega"
    doc["result"] = gf_to_json(g)
    doc["symbols"] = symbol_table(g)
    ps = candidate_pole_set(g)
    doc["poles"] = _poles(ps)
    lines = ["Z_X,w(T) = " + str(g.canonical()), "candidate poles: {" + ", ".join(_poles(ps)) + "}"]
    _emit(doc, args, lines)
    return EXIT_OK


def cmd_graph(args) -> int:
    raw = _load(args.file)
    g = graph_from_json(raw)
    ps = surface_reduce(g, args.lc_direction)
    doc = _base_doc("graph", {**raw, "lc_direction": args.lc_direction})
    doc["poles"] = _poles(ps)
    doc["caveats"].append(LC_CAVEAT)
    dropped = reducible_vertices(g, args.lc_direction)
    lines = [
        f"rule: {args.lc_direction}",
        "dropped vertices: " + (", ".join(dropped) if dropped else "none"),
        "candidate poles: {" + ", ".join(_poles(ps)) + "}",
        "caveat: " + LC_CAVEAT,
    ]
    _emit(doc, args, lines)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="motzeta", description="Motivic zeta functions from combinatorial data.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("newton", help="zeta function of a polynomial from its Newton polyhedron")
    p.add_argument("poly")
    p.add_argument("--local", action="store_true", help="sum over compact faces only (zeta function at the origin)")
    p.add_argument("--series", type=int, metavar="K", help="print coefficients of T^1..T^K")
    p.add_argument("--poles", action="store_true", help="print candidate poles")
    p.add_argument("--verify", type=int, nargs=2, metavar=("P", "NMAX"), help="compare with jet counts over F_P")
    p.add_argument("--q", metavar="Q1,Q2", help="fields for numeric series and the non-degeneracy search")
    p.add_argument("--json", metavar="PATH", help="write the JSON document to PATH ('-' for stdout)")
    p.set_defaults(func=cmd_newton)

    for name, fn, what in [("snc", cmd_snc, "SNC model"), ("fan", cmd_fan, "log-smooth fan data")]:
        p = sub.add_parser(name, help=f"zeta function from {what}")
        p.add_argument("file")
        p.add_argument("--json", metavar="PATH")
        p.set_defaults(func=fn)

    p = sub.add_parser("graph", help="candidate poles of a surface from its dual graph")
    p.add_argument("file")
    p.add_argument("--lc-direction", choices=["paper", "mmp"], default="paper")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.position is not None and getattr(args, "poly", None) is not None:
            print("  " + args.poly, file=sys.stderr)
            print("  " + " " * e.position + "^", file=sys.stderr)
        return EXIT_INPUT
    except InputError as e:
        print(f"error at {e.pointer}: {e.message}", file=sys.stderr)
        return EXIT_INPUT
    except ZetaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
