"""Zeta functions from fan data, SNC data and Newton polyhedra.

The fan and SNC engines return the volume-form zeta function Z_{X,w}(T);
the Newton engine returns Z_f(T). They are related by
Z_{X,w}(T) = Z_f(L T), i.e. ``gf_substitute(., -1)`` maps the former to the
latter.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import MissingClass, PreconditionViolated, ZetaError
from .genfun import GFTerm, RationalGF, cone_series, gf_scale, interior_sum_pieces
from .grothring import ClassSymbol, GrothElement, Laurent
from .newton import Polynomial, all_face_data, newton_polyhedron_of
from .polycone import Cone

LM1 = Laurent({1: 1, 0: -1})


def _as_element(c) -> GrothElement:
    if isinstance(c, ClassSymbol):
        return GrothElement.of(c)
    out = GrothElement.coerce(c)
    if out is NotImplemented:
        raise ZetaError(f"not a class: {c!r}")
    return out


@dataclass(frozen=True)
class StratumData:
    """One vertical stratum: its class, the cone of its characteristic
    monoid in Z^r, and the images of t and of the volume form."""

    label: str
    class_symbol: GrothElement
    rank: int
    M_cone: Cone
    et_vec: tuple
    omega_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "class_symbol", _as_element(self.class_symbol))
        object.__setattr__(self, "et_vec", tuple(int(x) for x in self.et_vec))
        object.__setattr__(self, "omega_vec", tuple(int(x) for x in self.omega_vec))
        if self.M_cone.dim != self.rank or len(self.et_vec) != self.rank or len(self.omega_vec) != self.rank:
            raise ZetaError(f"stratum {self.label}: vectors and cone must have length {self.rank}")


def zeta_from_fan_data(strata) -> RationalGF:
    """Sum over strata of class times the cone series of the stratum."""
    out = RationalGF()
    for s in strata:
        try:
            g = cone_series(s.M_cone, s.omega_vec, s.et_vec)
        except PreconditionViolated as e:
            raise PreconditionViolated(f"stratum {s.label}: {e}") from None
        out = out + gf_scale(g, s.class_symbol)
    return out


@dataclass(frozen=True)
class SncComponent:
    label: str
    N: int
    nu_log: int

    def __post_init__(self):
        if self.N < 1:
            raise ZetaError(f"component {self.label}: multiplicity must be >= 1")


@dataclass(frozen=True)
class SncData:
    """Components, the list of nonempty intersections (label sets) and the
    class of the open stratum over each."""

    components: tuple
    intersections: tuple
    classes: dict = field(hash=False)

    def __post_init__(self):
        labels = [c.label for c in self.components]
        if len(set(labels)) != len(labels):
            raise ZetaError("duplicate component labels")
        inter = []
        for j in self.intersections:
            j = frozenset(j)
            if not j or not j <= set(labels):
                raise ZetaError(f"bad intersection {sorted(j)}")
            inter.append(j)
        listed = set(inter)
        for j in inter:
            for k in range(1, len(j)):
                for sub in combinations(sorted(j), k):
                    if frozenset(sub) not in listed:
                        raise ZetaError(f"intersection list not downward closed: {list(sub)} missing")
        object.__setattr__(self, "intersections", tuple(sorted(set(inter), key=lambda s: (len(s), sorted(s)))))
        object.__setattr__(self, "classes", {frozenset(k): _as_element(v) for k, v in self.classes.items()})

    def component(self, label) -> SncComponent:
        return next(c for c in self.components if c.label == label)

    def multiplicity(self, j) -> int:
        """N_J, the gcd of the multiplicities over J."""
        g = 0
        for lab in j:
            g = gcd(g, self.component(lab).N)
        return g


def dl_to_log_nu(nu_dl: int, N: int) -> int:
    """Log multiplicity of the volume form from Denef-Loeser data (nu, N)."""
    return nu_dl - N


def zeta_snc(d: SncData) -> RationalGF:
    """Sum over intersections J of [E_J] (L-1)^(|J|-1) prod L^-nu T^N / (1 - L^-nu T^N)."""
    terms = []
    for j in d.intersections:
        if j not in d.classes:
            raise MissingClass(j)
        comps = [d.component(lab) for lab in sorted(j)]
        num = d.classes[j].scale(LM1 ** (len(j) - 1)).shift(-sum(c.nu_log for c in comps))
        terms.append(GFTerm(num, sum(c.N for c in comps), tuple((c.nu_log, c.N) for c in comps)))
    return RationalGF(terms)


def snc_to_strata(d: SncData) -> list[StratumData]:
    """Each intersection J becomes an orthant stratum of rank |J|."""
    out = []
    for j in d.intersections:
        if j not in d.classes:
            raise MissingClass(j)
        comps = [d.component(lab) for lab in sorted(j)]
        r = len(comps)
        out.append(
            StratumData(
                ",".join(c.label for c in comps),
                d.classes[j],
                r,
                Cone.orthant(r),
                tuple(c.N for c in comps),
                tuple(c.nu_log for c in comps),
            )
        )
    return out


def poles_log_smooth(model) -> set:
    """{-nu/N} over the components; accepts SncData, SncComponents or (N, nu) pairs."""
    if isinstance(model, SncData):
        pairs = [(c.N, c.nu_log) for c in model.components]
    else:
        pairs = [(c.N, c.nu_log) if isinstance(c, SncComponent) else tuple(c) for c in model]
    out = set()
    for n, nu in pairs:
        if n < 1:
            raise ZetaError("multiplicities must be >= 1")
        out.add(Fraction(-nu, n))
    return out


# ---------------------------------------------------------------------------
# Newton polyhedra


def zeta_newton(f: Polynomial, scope: str = "global") -> RationalGF:
    """Z_f(T) of a polynomial assumed non-degenerate for its Newton polyhedron.

    Each face contributes ([X(0)] L^-1 T/(1 - L^-1 T) + [X(1)]) times the sum
    of L^-nu(u) T^N(u) over the relative interior of its normal cone. Torus
    coordinates that f_gamma does not involve are split off as (L-1) factors
    and cancelled against the matching (1 - L^-1) denominators.
    """
    if scope not in ("global", "local"):
        raise ZetaError(f"unknown scope {scope}")
    if f.has_constant_term():
        raise ZetaError("f must vanish at the origin")
    n = f.n_vars
    alpha = (1,) * n
    terms = []
    for fd in all_face_data(f, compact_only=(scope == "local")):
        beta = fd.face.vertex_set[0]
        nsplit = len(fd.split_coords)
        x0 = None if fd.f_gamma.is_monomial() else GrothElement.of(fd.X0_reduced)
        x1 = GrothElement.of(fd.X1_reduced) if fd.X1_reduced is not None else None
        for nums, factors in interior_sum_pieces(fd.face.normal_cone, alpha, beta):
            flat = [a for a, b in factors if b == 0]
            if any(a != 1 for a in flat) or len(flat) > nsplit:
                raise ZetaError("unexpected normal-cone ray with N = 0")  # pragma: no cover
            k = len(flat)
            pre = LM1 ** (nsplit - k) * Laurent.mono(k)
            den = tuple(f_ for f_ in factors if f_[1] > 0)
            for tp, lau in sorted(nums.items()):
                base = lau * pre
                if x0 is not None:
                    terms.append(GFTerm(x0.scale(base.shift(-1)), tp + 1, den + ((1, 1),)))
                if x1 is not None:
                    terms.append(GFTerm(x1.scale(base), tp, den))
    return RationalGF(terms)


def poles_newton(f: Polynomial) -> set:
    """{-1} together with -nu(u)/N(u) over facet normals u with N(u) > 0."""
    gamma = newton_polyhedron_of(f)
    out = {Fraction(-1)}
    for u, offset in gamma.facets:
        if offset > 0:
            out.add(Fraction(-sum(u), offset))
    return out


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class GraphVertex:
    label: str
    N: int
    nu: int
    self_intersection: int
    field_degree: int = 1
    is_exceptional: bool = True

    def __post_init__(self):
        if self.N < 1 or self.field_degree < 1:
            raise ZetaError(f"vertex {self.label}: N and field degree must be >= 1")


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple
    edges: tuple = ()


LC_DIRECTIONS = ("paper", "mmp")


def reducible_vertices(g: DualGraph, direction: str = "paper") -> list[str]:
    """Exceptional vertices whose ratio may be dropped.

    ``paper``: self-intersection >= -2 * field degree.
    ``mmp``: the comparison reversed, self-intersection <= -2 * field degree.
    """
    if direction not in LC_DIRECTIONS:
        raise ZetaError(f"unknown direction {direction}")
    out = []
    for v in g.vertices:
        if not v.is_exceptional:
            continue
        bound = -2 * v.field_degree
        hit = v.self_intersection >= bound if direction == "paper" else v.self_intersection <= bound
        if hit:
            out.append(v.label)
    return out


def surface_reduce(g: DualGraph, direction: str = "paper") -> set:
    drop = set(reducible_vertices(g, direction))
    return {Fraction(-v.nu, v.N) for v in g.vertices if v.label not in drop}
