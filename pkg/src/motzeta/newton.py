"""Polynomials, their Newton faces, and the non-degeneracy check."""

from dataclasses import dataclass, field

import numpy as np

from . import finitefield, intlat
from .budget import check_budget
from .errors import FaceMismatch, NoSolution, ParseError, UnknownVariable, ZetaError
from .grothring import ClassSymbol, render_poly, torus_hypersurface
from .intlat import dot
from .polycone import Face, NewtonPolyhedron, enumerate_faces, face_normal, newton_polyhedron

LETTER_VARS = ("x", "y", "z", "w")
INDEXED_VARS = tuple(f"x{i}" for i in range(1, 10))


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial: sorted (exponent, coefficient) pairs, no zeros."""

    n_vars: int
    terms: tuple
    names: tuple = field(default=(), compare=False)

    @classmethod
    def from_dict(cls, d, n_vars=None, names=()):
        items = [(intlat.vec(m), int(c)) for m, c in d.items()]
        if n_vars is None:
            n_vars = len(items[0][0])
        acc = {}
        for m, c in items:
            if len(m) != n_vars:
                raise ZetaError("exponent length differs from the number of variables")
            if any(e < 0 for e in m):
                raise ZetaError("negative exponent")
            acc[m] = acc.get(m, 0) + c
        terms = tuple(sorted((m, c) for m, c in acc.items() if c))
        if not terms:
            raise ZetaError("the polynomial is zero")
        return cls(n_vars, terms, tuple(names))

    def as_dict(self):
        return dict(self.terms)

    @property
    def support(self):
        return [m for m, _ in self.terms]

    def has_constant_term(self):
        return any(not any(m) for m, _ in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def variable_names(self):
        return list(self.names) if self.names else [f"x{i + 1}" for i in range(self.n_vars)]

    def __str__(self):
        return render_poly(list(self.terms), self.variable_names())


# ---------------------------------------------------------------------------
# parsing

class _Parser:
    """Recursive descent over: expr = ['+'|'-'] term {('+'|'-') term};
    term = power {['*'] power}; power = atom ['^' integer];
    atom = integer | variable | '(' expr ')'."""

    def __init__(self, text, allowed):
        self.text = text
        self.allowed = allowed
        self.toks = self._tokenize(text)
        self.i = 0
        self.used = set()

    def _tokenize(self, s):
        toks = []
        i = 0
        while i < len(s):
            c = s[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                toks.append(("int", int(s[i:j]), i))
                i = j
            elif c.isalpha():
                if c == "x" and i + 1 < len(s) and s[i + 1].isdigit():
                    j = i + 1
                    while j < len(s) and s[j].isdigit():
                        j += 1
                    name = s[i:j]
                    if name not in INDEXED_VARS:
                        raise UnknownVariable(f"unknown variable {name!r}", i)
                    toks.append(("var", name, i))
                    i = j
                elif c in LETTER_VARS:
                    toks.append(("var", c, i))
                    i += 1
                else:
                    raise UnknownVariable(f"unknown variable {c!r}", i)
            elif c in "+-*^()":
                toks.append((c, c, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {c!r}", i)
        toks.append(("end", None, len(s)))
        return toks

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {kind!r} but found {what}", t[2])
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        acc = _pscale(self.term(), sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            acc = _padd(acc, _pscale(self.term(), -1 if op == "-" else 1))
        return acc

    def term(self):
        acc = self.power()
        while True:
            k = self.peek()[0]
            if k == "*":
                self.take()
                acc = _pmul(acc, self.power())
            elif k in ("int", "var", "("):
                acc = _pmul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            k = self.take("int")[1]
            out = {(): 1}
            for _ in range(k):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            return {(): t[1]} if t[1] else {}
        if t[0] == "var":
            self.take()
            if self.allowed is not None and t[1] not in self.allowed:
                raise UnknownVariable(f"variable {t[1]!r} is not declared", t[2])
            self.used.add(t[1])
            return {((t[1], 1),): 1}
        if t[0] == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if t[0] == "end" else repr(t[1])
        raise ParseError(f"expected a number, variable or '(' but found {what}", t[2])


def _padd(a, b):
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def _pscale(a, s):
    return {m: s * c for m, c in a.items()}


def _pmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            e = dict(m1)
            for v, k in m2:
                e[v] = e.get(v, 0) + k
            m = tuple(sorted(e.items()))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _default_order(names):
    order = LETTER_VARS + INDEXED_VARS
    return [v for v in order if v in names]


def parse_polynomial(text: str, vars=None) -> Polynomial:
    """Parse an integer polynomial.

    Variables are x, y, z, w or x1..x9. Without ``vars`` the variables that
    occur are used, in that canonical order.
    """
    allowed = list(vars) if vars is not None else None
    if allowed is not None:
        for v in allowed:
            if v not in LETTER_VARS + INDEXED_VARS:
                raise UnknownVariable(f"{v!r} is not a valid variable name")
    p = _Parser(text, allowed)
    d = p.parse()
    names = allowed if allowed is not None else _default_order(p.used)
    if not names:
        raise ZetaError("the polynomial has no variables")
    idx = {v: i for i, v in enumerate(names)}
    out = {}
    for m, c in d.items():
        e = [0] * len(names)
        for v, k in m:
            e[idx[v]] = k
        out[tuple(e)] = c
    if not out:
        raise ZetaError("the polynomial is zero")
    return Polynomial.from_dict(out, len(names), names)


# ---------------------------------------------------------------------------
# faces

def newton_polyhedron_of(f: Polynomial) -> NewtonPolyhedron:
    return newton_polyhedron(f.support)


def face_restriction(f: Polynomial, face: Face) -> Polynomial:
    """Terms of f with exponent on the face."""
    u = face_normal(face)
    if len(u) != f.n_vars:
        raise FaceMismatch("face and polynomial live in different dimensions")
    supp = set(f.support)
    nu = min(dot(u, m) for m in supp)
    if any(m not in supp or dot(u, m) != nu for m in face.vertex_set):
        raise FaceMismatch("the face is not a face of this polynomial's Newton polyhedron")
    return Polynomial(f.n_vars, tuple((m, c) for m, c in f.terms if dot(u, m) == nu), f.names)


@dataclass(frozen=True)
class FaceData:
    """Invariants of a face entering the Newton formula.

    ``split_coords`` lists the coordinates j with e_j in the normal cone and
    N(e_j) = 0; f_gamma does not involve them, so the torus classes split off
    a factor (L-1) for each. ``X0_reduced``/``X1_reduced`` are the classes in
    the remaining coordinates.
    """

    face: Face
    f_gamma: Polynomial
    v_gamma_nonzero: bool
    rho: int
    weight: tuple | None
    X0: ClassSymbol
    X1: ClassSymbol | None
    split_coords: tuple = ()
    X0_reduced: ClassSymbol | None = None
    X1_reduced: ClassSymbol | None = None


def face_data(f: Polynomial, face: Face) -> FaceData:
    fg = face_restriction(f, face)
    n = f.n_vars
    sigma = face.normal_cone
    u = face_normal(face)
    m0 = face.vertex_set[0]
    nonzero = dot(u, m0) > 0
    rho, w = 0, None
    if nonzero:
        perp = intlat.kernel_basis(sigma.rays, n) if sigma.rays else []
        rho = intlat.divisibility_index(m0, perp)
        rows = [list(m) for m, _ in fg.terms]
        rhs = [rho] * len(rows)
        try:
            w = intlat.solve_linear_diophantine(rows, rhs)
        except NoSolution:  # pragma: no cover - excluded by construction
            raise ZetaError(f"no weight vector for face {face.vertex_set}")
    split = tuple(
        j for j in range(n)
        if tuple(int(i == j) for i in range(n)) in sigma.rays and all(m[j] == 0 for m in face.vertex_set)
    )
    x0 = torus_hypersurface(n, fg.terms, 0)
    x1 = torus_hypersurface(n, fg.terms, 1, rho, w) if nonzero else None
    keep = [j for j in range(n) if j not in split]
    red_terms = [(tuple(m[j] for j in keep), c) for m, c in fg.terms]
    x0r = torus_hypersurface(len(keep), red_terms, 0)
    x1r = None
    if nonzero:
        x1r = torus_hypersurface(len(keep), red_terms, 1, rho, tuple(w[j] for j in keep))
    return FaceData(face, fg, nonzero, rho, w, x0, x1, split, x0r, x1r)


def all_face_data(f: Polynomial, compact_only: bool = False) -> list[FaceData]:
    faces = enumerate_faces(newton_polyhedron_of(f))
    return [face_data(f, g) for g in faces if g.is_compact or not compact_only]


# ---------------------------------------------------------------------------
# non-degeneracy


@dataclass(frozen=True)
class FaceCheck:
    face: Face
    f_gamma: Polynomial
    passed: dict  # q -> bool
    witness: dict  # q -> discrete-log coordinates of a singular torus point


@dataclass(frozen=True)
class NondegeneracyReport:
    scope: str
    fields: tuple
    checks: tuple
    caveat: str = (
        "non-degeneracy was only checked by exhaustive search over the listed finite fields; "
        "this finds counterexamples but does not prove non-degeneracy over the ground field"
    )

    @property
    def passed(self) -> bool:
        return all(all(c.passed.values()) for c in self.checks)

    def failing_faces(self, q=None):
        out = []
        for c in self.checks:
            if q is None and not all(c.passed.values()) or q is not None and not c.passed[q]:
                out.append(c)
        return out

    def passed_at(self, q) -> bool:
        return all(c.passed[q] for c in self.checks)


def _singular_torus_point(terms, n, q):
    """Discrete logs of a torus point where g and all partials vanish, or None."""
    ff = finitefield.field(q)
    polys = [list(terms)]
    for j in range(n):
        polys.append([(tuple(e - (i == j) for i, e in enumerate(m)), c * m[j]) for m, c in terms if m[j]])
    for logs in finitefield.torus_log_chunks(n, q):
        mask = np.ones(len(logs), dtype=bool)
        for p in polys:
            if not p:
                continue
            mask &= finitefield.eval_on_torus(ff, p, logs) == 0
            if not mask.any():
                break
        if mask.any():
            return tuple(int(x) for x in logs[np.argmax(mask)])
    return None


def check_nondegenerate(f: Polynomial, scope: str = "all_faces", q_list=(5, 7), budget=None) -> NondegeneracyReport:
    """Search each F_q torus for a point where f_gamma and its gradient vanish."""
    if scope not in ("all_faces", "compact_faces"):
        raise ZetaError(f"unknown scope {scope}")
    q_list = tuple(int(q) for q in q_list)
    if not q_list:
        raise ZetaError("at least one field is required")
    for q in q_list:
        finitefield.prime_power(q)
        check_budget((q - 1) ** f.n_vars, f"torus search over F_{q}", budget)
    faces = enumerate_faces(newton_polyhedron_of(f))
    checks = []
    for g in faces:
        if scope == "compact_faces" and not g.is_compact:
            continue
        fg = face_restriction(f, g)
        passed, wit = {}, {}
        for q in q_list:
            pt = _singular_torus_point(fg.terms, f.n_vars, q)
            passed[q] = pt is None
            if pt is not None:
                wit[q] = pt
        checks.append(FaceCheck(g, fg, passed, wit))
    return NondegeneracyReport(scope, q_list, tuple(checks))
