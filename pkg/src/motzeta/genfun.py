"""Rational generating functions in T with Grothendieck-ring coefficients.

A term is ``numerator * T^c / prod (1 - L^-a T^b)`` with every b >= 1. The
lattice-point engine sums L^-<u,alpha> T^<u,beta> over the relative interior
of a cone by half-open decomposition.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolated, ZeroEt, ZetaError
from .grothring import GrothElement, Laurent, specialize
from .intlat import dot
from .polycone import Cone, dual_cone, half_open_decompose, parallelepiped_points


@dataclass(frozen=True)
class GFTerm:
    numerator: GrothElement
    t_power: int
    denominator: tuple  # sorted (a, b) pairs, each meaning (1 - L^-a T^b)

    def __post_init__(self):
        den = tuple(sorted((int(a), int(b)) for a, b in self.denominator))
        if any(b < 1 for _, b in den):
            raise ZetaError("denominator factors need b >= 1")
        if self.t_power < 0:
            raise ZetaError("negative power of T")
        object.__setattr__(self, "denominator", den)


class RationalGF:
    """A sum of :class:`GFTerm`; the term list is kept as given."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(t for t in terms if not t.numerator.is_zero())

    @classmethod
    def term(cls, numerator, t_power=0, denominator=()) -> "RationalGF":
        return cls([GFTerm(GrothElement.coerce(numerator), t_power, tuple(denominator))])

    @classmethod
    def zero(cls) -> "RationalGF":
        return cls()

    def __eq__(self, other):
        # structural: same canonical term list (see gf_equal for rational equality)
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.canonical().terms == other.canonical().terms

    def __hash__(self):
        return hash(self.canonical().terms)

    def __add__(self, other):
        return gf_add(self, other)

    def __mul__(self, other):
        return gf_mul(self, other)

    def canonical(self) -> "RationalGF":
        """Merge terms with equal T-power and denominator and sort them."""
        acc: dict = {}
        for t in self.terms:
            key = (t.t_power, t.denominator)
            acc[key] = acc.get(key, GrothElement()) + t.numerator
        keys = sorted(acc, key=lambda k: (len(k[1]), k[1], k[0]))
        return RationalGF(GFTerm(acc[k], k[0], k[1]) for k in keys)

    def symbols(self):
        out = set()
        for t in self.terms:
            out.update(t.numerator.symbols())
        return sorted(out, key=lambda s: s.name)

    def __repr__(self):
        return f"RationalGF({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            s = f"({t.numerator})"
            if t.t_power:
                s += "*T" if t.t_power == 1 else f"*T^{t.t_power}"
            if t.denominator:
                s += "/" + "".join(f"(1 - {_factor_text(a, b)})" for a, b in t.denominator)
            parts.append(s)
        return " + ".join(parts)


def _factor_text(a, b):
    lp = "" if a == 0 else f"L^{-a}*"
    tp = "T" if b == 1 else f"T^{b}"
    return lp + tp


def gf_add(a: RationalGF, b: RationalGF) -> RationalGF:
    return RationalGF(a.terms + b.terms)


def gf_mul(a: RationalGF, b: RationalGF) -> RationalGF:
    return RationalGF(
        GFTerm(x.numerator * y.numerator, x.t_power + y.t_power, x.denominator + y.denominator)
        for x in a.terms
        for y in b.terms
    )


def gf_scale(g: RationalGF, c) -> RationalGF:
    """Multiply every numerator by a GrothElement or Laurent polynomial."""
    c = GrothElement.coerce(c)
    return RationalGF(GFTerm(t.numerator * c, t.t_power, t.denominator) for t in g.terms)


def gf_substitute(g: RationalGF, e: int) -> RationalGF:
    """Replace T by L^e T."""
    return RationalGF(
        GFTerm(t.numerator.shift(e * t.t_power), t.t_power, tuple((a - e * b, b) for a, b in t.denominator))
        for t in g.terms
    )


def candidate_pole_set(g: RationalGF) -> set:
    return {Fraction(-a, b) for t in g.terms for a, b in t.denominator}


# ---------------------------------------------------------------------------
# series


def _factor_series(denominator, k, one, power):
    """Coefficients 0..k of 1/prod(1 - x_f T^b) where x_f = power(a)."""
    s = [one] + [one * 0 for _ in range(k)]
    for a, b in denominator:
        x = power(a)
        # multiply by 1/(1 - x T^b): s_i += x * s_{i-b}
        for i in range(b, k + 1):
            s[i] = s[i] + x * s[i - b]
    return s


def expand(g: RationalGF, k: int) -> list[GrothElement]:
    """Coefficients of T^1..T^k."""
    out = [GrothElement() for _ in range(k + 1)]
    for t in g.terms:
        if t.t_power > k:
            continue
        s = _factor_series(t.denominator, k - t.t_power, Laurent.const(1), lambda a: Laurent.mono(-a))
        for i, c in enumerate(s):
            if c:
                out[i + t.t_power] = out[i + t.t_power] + t.numerator.scale(c)
    return out[1:]


def constant_term(g: RationalGF) -> GrothElement:
    return sum((t.numerator for t in g.terms if t.t_power == 0), GrothElement())


def series_numeric(g: RationalGF, q: int, k: int) -> list[Fraction]:
    """Coefficients of T^0..T^k after specializing at q."""
    out = [Fraction(0)] * (k + 1)
    q = Fraction(q)
    for t in g.terms:
        if t.t_power > k:
            continue
        num = specialize(t.numerator, int(q))
        s = _factor_series(t.denominator, k - t.t_power, Fraction(1), lambda a: q ** (-a))
        for i, c in enumerate(s):
            out[i + t.t_power] += num * c
    return out


# ---------------------------------------------------------------------------
# equality


def _lcm_denominator(g: RationalGF) -> Counter:
    d: Counter = Counter()
    for t in g.terms:
        for f, m in Counter(t.denominator).items():
            d[f] = max(d[f], m)
    return d


def _numerator_over(g: RationalGF, den: Counter) -> dict:
    """Numerator polynomial in T (degree -> GrothElement) over ``den``."""
    total: dict = {}
    for t in g.terms:
        rest = den - Counter(t.denominator)
        poly = {t.t_power: t.numerator}
        for (a, b), m in rest.items():
            for _ in range(m):
                nxt = dict(poly)
                for deg, c in poly.items():
                    nxt[deg + b] = nxt.get(deg + b, GrothElement()) - c.shift(-a)
                poly = nxt
        for deg, c in poly.items():
            total[deg] = total.get(deg, GrothElement()) + c
    return {d: c for d, c in total.items() if c}


def gf_equal(a: RationalGF, b: RationalGF, mode: str = "symbolic", qs=(3, 5, 7)) -> bool:
    """Compare two generating functions.

    ``symbolic``: each side is written over its own least common denominator;
    the two denominators must coincide and the numerators must be equal as
    polynomials in T over the Grothendieck ring.
    ``numeric``: specialize at every q in ``qs`` and compare the series up to
    an order past which equality of the rational functions is forced.
    """
    if mode == "symbolic":
        da, db = _lcm_denominator(a), _lcm_denominator(b)
        if da != db:
            return False
        return _numerator_over(a, da) == _numerator_over(b, db)
    if mode != "numeric":
        raise ZetaError(f"unknown equality mode {mode}")
    return all(numeric_difference_order(a, b, q) is None for q in qs)


def equality_order_bound(a: RationalGF, b: RationalGF) -> int:
    den = _lcm_denominator(a) | _lcm_denominator(b)
    sb = sum(f[1] * m for f, m in den.items())
    tp = max([t.t_power for t in a.terms + b.terms], default=0)
    return tp + sb


def numeric_difference_order(a: RationalGF, b: RationalGF, q: int):
    """First T-degree where the q-specialized series differ, or None."""
    k = equality_order_bound(a, b)
    sa, sb = series_numeric(a, q, k), series_numeric(b, q, k)
    for i, (x, y) in enumerate(zip(sa, sb)):
        if x != y:
            return i
    return None


# ---------------------------------------------------------------------------
# lattice-point sums over cones


def interior_sum_pieces(cone: Cone, alpha, beta):
    """Sum of L^-<u,alpha> T^<u,beta> over the relative interior of ``cone``.

    Returns a list of ``(numerators, factors)``: ``numerators`` maps T-powers
    to Laurent polynomials and ``factors`` lists the (a, b) of each piece's
    denominator, including any with b = 0. Each cone ray with b = 0 must
    have a >= 1 for the series to make sense.
    """
    out = []
    for piece in half_open_decompose(cone):
        factors = [(dot(u, alpha), dot(u, beta)) for u in piece.rays]
        nums: dict = {}
        for p in parallelepiped_points(piece):
            tp = dot(p, beta)
            nums[tp] = nums.get(tp, Laurent()) + Laurent.mono(-dot(p, alpha))
        out.append((nums, factors))
    return out


def cone_series(M_cone: Cone, omega_vec, et_vec) -> RationalGF:
    """(L-1)^(d-1) * sum over interior lattice points u of the dual cone of
    L^-<u,omega> T^<u,e_t>, in closed form.

    Denominator factors with <u,e_t> = 0 are (1 - L^-1) by hypothesis and
    are cancelled against the (L-1) prefactor.
    """
    d = M_cone.dim
    if d < 1 or not M_cone.is_pointed or not M_cone.is_full_dim:
        raise PreconditionViolated("the cone must be pointed and full dimensional")
    omega_vec, et_vec = tuple(omega_vec), tuple(et_vec)
    if not any(et_vec):
        raise ZeroEt("e_t is zero")
    if not M_cone.contains(et_vec):
        raise PreconditionViolated(f"e_t {et_vec} is not in the cone")
    dual = dual_cone(M_cone)
    for u in dual.rays:
        if dot(u, et_vec) == 0 and dot(u, omega_vec) != 1:
            raise PreconditionViolated(
                f"dual ray {u} has <u,e_t> = 0 but <u,omega> = {dot(u, omega_vec)} (must be 1)"
            )
    terms = []
    lm1 = Laurent({1: 1, 0: -1})
    for nums, factors in interior_sum_pieces(dual, omega_vec, et_vec):
        k = sum(1 for _, b in factors if b == 0)
        pre = lm1 ** (d - 1 - k) * Laurent.mono(k)
        den = tuple(f for f in factors if f[1] > 0)
        for tp, lau in sorted(nums.items()):
            terms.append(GFTerm(GrothElement.scalar(lau * pre), tp, den))
    return RationalGF(terms)
