"""Symbolic Grothendieck-ring coefficients.

A :class:`GrothElement` is a finite sum of class symbols with coefficients
in Z[L, L^-1]. Symbols are compared by canonical name only; no geometric
identities between different symbols are ever used. Specialization sends
L to q and each symbol to its number of F_q points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import finitefield
from .budget import check_budget
from .errors import NoCountAvailable, ZetaError
from .intlat import dot, vec


class Laurent:
    """Laurent polynomial in L with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for e, a in (coeffs or {}).items():
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
        self._c = {e: a for e, a in c.items() if a}

    @classmethod
    def const(cls, a: int) -> "Laurent":
        return cls({0: a})

    @classmethod
    def mono(cls, e: int, a: int = 1) -> "Laurent":
        return cls({e: a})

    @staticmethod
    def coerce(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, int):
            return Laurent.const(x)
        return NotImplemented

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        other = Laurent.coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return Laurent(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = Laurent.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        other = Laurent.coerce(other)
        if other is NotImplemented:
            return other
        c = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return Laurent(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                (e, a), = self._c.items()
                if a in (1, -1):
                    return Laurent({-e * (-k): a ** (-k)})
            raise ZetaError("only monomials with unit coefficient are invertible")
        out = Laurent.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by L^k."""
        return Laurent({e + k: a for e, a in self._c.items()})

    def __eq__(self, other):
        other = Laurent.coerce(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def evaluate(self, q) -> Fraction:
        q = Fraction(q)
        return sum((a * q**e for e, a in self._c.items()), Fraction(0))

    def min_exp(self):
        return min(self._c) if self._c else None

    def __repr__(self):
        return f"Laurent({dict(self.items())})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            mon = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            mag = abs(a)
            if mon and mag == 1:
                s = mon
            elif mon:
                s = f"{mag}*{mon}"
            else:
                s = str(mag)
            parts.append(("- " if a < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


L = Laurent.mono(1)


def _normalize_terms(terms):
    c = {}
    for m, a in terms:
        m = vec(m)
        c[m] = c.get(m, 0) + int(a)
    return tuple(sorted((m, a) for m, a in c.items() if a))


def render_poly(terms, names=None) -> str:
    """Render exponent/coefficient pairs with variables x1..xn."""
    if not terms:
        return "0"
    n = len(terms[0][0])
    names = names or [f"x{i + 1}" for i in range(n)]
    parts = []
    for m, a in sorted(terms, key=lambda t: t[0], reverse=True):
        mon = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e)
        mag = abs(a)
        s = mon if (mon and mag == 1) else (f"{mag}*{mon}" if mon else str(mag))
        parts.append(("- " if a < 0 else "+ ") + s)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


@dataclass(frozen=True, eq=False)
class ClassSymbol:
    """A named class in the Grothendieck ring.

    kinds: ``point``; ``torus_hypersurface`` ({g = target} in G_m^n, with
    optional mu_rho action of weight w); ``opaque`` (caller supplied, maybe
    with a table of point counts); ``product`` (formal product of symbols).
    """

    name: str
    kind: str
    ambient_dim: int = 0
    terms: tuple = ()
    target: int | None = None
    mu_order: int = 0
    mu_weight: tuple | None = None
    count_table: tuple = ()
    factors: tuple = field(default=())

    def __eq__(self, other):
        return isinstance(other, ClassSymbol) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __lt__(self, other):
        return self.name < other.name

    def __repr__(self):
        return f"ClassSymbol({self.name!r})"


POINT = ClassSymbol("pt", "point")


def point() -> ClassSymbol:
    return POINT


def torus_hypersurface(n: int, terms, target: int, mu_order: int = 0, mu_weight=None) -> ClassSymbol:
    """The class of {g = target} in G_m^n, g given by (exponent, coefficient) pairs."""
    terms = _normalize_terms(terms)
    if not terms:
        raise ZetaError("defining polynomial is zero")
    if any(len(m) != n for m, _ in terms):
        raise ZetaError("exponent length differs from ambient dimension")
    if target not in (0, 1):
        raise ZetaError("target must be 0 or 1")
    if target == 0:
        if mu_order:
            raise ZetaError("the zero locus carries the trivial action")
        g = 0
        for _, a in terms:
            g = gcd(g, a)
        sign = -1 if terms[-1][1] < 0 else 1
        terms = tuple((m, sign * a // g) for m, a in terms)
        name = f"{{{render_poly(terms)} = 0 in Gm^{n}}}"
        return ClassSymbol(name, "torus_hypersurface", n, terms, 0)
    if mu_order < 1 or mu_weight is None:
        raise ZetaError("target 1 needs mu order >= 1 and a weight vector")
    w = vec(mu_weight)
    if len(w) != n or any(dot(m, w) != mu_order for m, _ in terms):
        raise ZetaError("weight vector does not pair to the mu order on every exponent")
    wtxt = ",".join(str(x) for x in w)
    name = f"{{{render_poly(terms)} = 1 in Gm^{n} | mu_{mu_order} w=({wtxt})}}"
    return ClassSymbol(name, "torus_hypersurface", n, terms, 1, mu_order, w)


def opaque(name: str, counts=None) -> ClassSymbol:
    """Caller supplied class with an optional map q -> #points."""
    if name == "pt" or name.startswith("{") or name.startswith("("):
        raise ZetaError(f"reserved symbol name {name!r}")
    table = tuple(sorted((int(q), int(c)) for q, c in (counts or {}).items()))
    return ClassSymbol(name, "opaque", count_table=table)


def product_symbol(a: ClassSymbol, b: ClassSymbol) -> ClassSymbol:
    fs = tuple(sorted(list(a.factors or (a,)) + list(b.factors or (b,))))
    name = "*".join(f"({f.name})" for f in fs)
    return ClassSymbol(name, "product", factors=fs)


@lru_cache(maxsize=4096)
def _count_torus(terms, target, n, q, budget):
    check_budget((q - 1) ** n, f"counting points over F_{q}", budget)
    ff = finitefield.field(q)
    tgt = ff.from_int(target)
    total = 0
    for logs in finitefield.torus_log_chunks(n, q):
        total += int((finitefield.eval_on_torus(ff, terms, logs) == tgt).sum())
    return total


def count_points(s: ClassSymbol, q: int, budget: int | None = None) -> int:
    """Number of F_q points of the class (the mu action is forgotten)."""
    finitefield.prime_power(q)
    if s.kind == "point":
        return 1
    if s.kind == "torus_hypersurface":
        return _count_torus(s.terms, s.target, s.ambient_dim, q, budget)
    if s.kind == "opaque":
        table = dict(s.count_table)
        if q not in table:
            raise NoCountAvailable(f"no point count for {s.name} over F_{q}")
        return table[q]
    if s.kind == "product":
        out = 1
        for f in s.factors:
            out *= count_points(f, q, budget)
        return out
    raise ZetaError(f"unknown symbol kind {s.kind}")


class GrothElement:
    """Finite sum of class symbols with Laurent-polynomial coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        for s, c in (terms or {}).items():
            c = Laurent.coerce(c)
            t[s] = t.get(s, Laurent()) + c
        self._t = {s: c for s, c in t.items() if c}

    @classmethod
    def of(cls, s: ClassSymbol, c=1) -> "GrothElement":
        return cls({s: c})

    @classmethod
    def scalar(cls, c) -> "GrothElement":
        return cls({POINT: c})

    @staticmethod
    def coerce(x):
        if isinstance(x, GrothElement):
            return x
        if isinstance(x, (int, Laurent)):
            return GrothElement.scalar(x)
        return NotImplemented

    def items(self):
        return sorted(self._t.items(), key=lambda kv: kv[0].name)

    def symbols(self):
        return sorted(self._t, key=lambda s: s.name)

    def coefficient(self, s: ClassSymbol) -> Laurent:
        return self._t.get(s, Laurent())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other):
        other = GrothElement.coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for s, c in other._t.items():
            t[s] = t.get(s, Laurent()) + c
        return GrothElement(t)

    __radd__ = __add__

    def __neg__(self):
        return GrothElement({s: -c for s, c in self._t.items()})

    def __sub__(self, other):
        other = GrothElement.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return GrothElement.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        if not isinstance(other, GrothElement):
            return NotImplemented
        out = {}
        for s1, c1 in self._t.items():
            for s2, c2 in other._t.items():
                if s1 == POINT:
                    s = s2
                elif s2 == POINT:
                    s = s1
                else:
                    s = product_symbol(s1, s2)
                out[s] = out.get(s, Laurent()) + c1 * c2
        return GrothElement(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "GrothElement":
        c = Laurent.coerce(c)
        return GrothElement({s: v * c for s, v in self._t.items()})

    def shift(self, k: int) -> "GrothElement":
        return GrothElement({s: v.shift(k) for s, v in self._t.items()})

    def __eq__(self, other):
        other = GrothElement.coerce(other)
        if other is NotImplemented:
            return False
        return self._t == other._t

    def __hash__(self):
        return hash(tuple((s.name, c) for s, c in self.items()))

    def __repr__(self):
        return f"GrothElement({str(self)!r})"

    def __str__(self):
        if not self._t:
            return "0"
        out = ""
        for s, c in self.items():
            # a lone negative monomial coefficient is pulled out as a minus sign
            neg = len(c._c) == 1 and next(iter(c._c.values())) < 0
            cs = str(-c if neg else c)
            if s == POINT:
                part = f"({cs})"
            elif cs == "1":
                part = f"[{s.name}]"
            else:
                part = f"({cs})*[{s.name}]"
            if out:
                out += (" - " if neg else " + ") + part
            else:
                out = ("-" if neg else "") + part
        return out


def groth_arith(a: GrothElement, b: GrothElement, op: str) -> GrothElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ZetaError(f"unknown operation {op}")


def specialize(e: GrothElement, q: int, budget: int | None = None) -> Fraction:
    """Image under L -> q and [X] -> #X(F_q)."""
    total = Fraction(0)
    for s, c in e.items():
        total += count_points(s, q, budget) * c.evaluate(q)
    return total
