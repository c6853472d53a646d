"""Rational polyhedral cones, Newton polyhedra and lattice points in cones.

Cones carry both descriptions: extreme rays plus a lineality basis, and
facet normals plus equations. Duality just swaps the two.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import random

import numpy as np

from . import intlat
from .errors import EmptySupport, NotPointed, UnboundedDirection, ZetaError
from .intlat import dot, primitive, rank, vec


# ---------------------------------------------------------------------------
# double description


def _double_description(constraints, d):
    """Extreme rays and lineality of {x in R^d : <a, x> >= 0 for a in constraints}.

    Incremental method with exact integers. Rays are kept primitive, each with
    the set of constraint indices it makes tight.
    """
    lin = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[tuple[tuple, frozenset]] = []
    for idx, a in enumerate(constraints):
        vals = [dot(a, l) for l in lin]
        piv = next((i for i, x in enumerate(vals) if x != 0), None)
        if piv is not None:
            l0, s = lin[piv], vals[piv]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            new_lin = []
            for i, l in enumerate(lin):
                if i != piv:
                    new_lin.append(primitive(tuple(s * x - vals[i] * y for x, y in zip(l, l0))))
            new_rays = []
            for r, tight in rays:
                ar = dot(a, r)
                r2 = tuple(s * x - ar * y for x, y in zip(r, l0))
                new_rays.append((primitive(r2), tight | {idx}))
            new_rays.append((primitive(l0), frozenset(range(idx))))
            lin, rays = new_lin, new_rays
            continue
        pos, zero, neg = [], [], []
        for r, tight in rays:
            ar = dot(a, r)
            if ar > 0:
                pos.append((r, tight, ar))
            elif ar < 0:
                neg.append((r, tight, ar))
            else:
                zero.append((r, tight | {idx}))
        new_rays = [(r, t) for r, t, _ in pos] + zero
        for rp, tp, ap in pos:
            for rn, tn, an in neg:
                common = tp & tn
                adjacent = True
                for r, t in rays:
                    if r is not rp and r is not rn and common <= t:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r2 = tuple(ap * y - an * x for x, y in zip(rp, rn))
                new_rays.append((primitive(r2), common | {idx}))
        rays = new_rays
    seen = {}
    for r, t in rays:
        seen.setdefault(r, t)
    return sorted(seen), lin


def _canonical_lattice(vectors, d):
    """Canonical basis (rows of the Hermite form) of the span of ``vectors``
    intersected with Z^d."""
    if not vectors:
        return ()
    # saturate: kernel of the kernel
    k = intlat.kernel_basis(vectors, d)
    sat = intlat.kernel_basis(k, d) if k else [tuple(r) for r in intlat.identity(d)]
    return tuple(tuple(r) for r in intlat._row_hermite([list(x) for x in sat]))


def _reduce_mod(v, basis_rows):
    """Reduce ``v`` against row-Hermite basis rows (pivot entries into a
    symmetric range) and make it primitive."""
    v = list(v)
    for b in basis_rows:
        p = next(i for i, x in enumerate(b) if x != 0)
        q = v[p] // b[p]
        v = [x - q * y for x, y in zip(v, b)]
    return primitive(v)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in R^dim.

    ``rays`` are primitive extreme rays (modulo ``lineality``), ``facets`` are
    primitive inner normals (modulo ``equations``). For a pointed full
    dimensional cone ``lineality`` and ``equations`` are empty.
    """

    dim: int
    rays: tuple
    lineality: tuple
    facets: tuple
    equations: tuple

    @classmethod
    def _build(cls, d, rays, lin, facets, eqs):
        lin_c = _canonical_lattice(list(lin), d)
        eq_c = _canonical_lattice(list(eqs), d)
        rays_c = tuple(sorted({_reduce_mod(r, lin_c) for r in rays}))
        facets_c = tuple(sorted({_reduce_mod(h, eq_c) for h in facets}))
        return cls(d, rays_c, lin_c, facets_c, eq_c)

    @classmethod
    def from_rays(cls, gens, dim: int | None = None) -> "Cone":
        gens = [vec(g) for g in gens if any(g)]
        if dim is None:
            if not gens:
                raise ZetaError("dimension required for a cone without generators")
            dim = len(gens[0])
        facets, eqs = _double_description(gens, dim)
        cons = list(facets) + list(eqs) + [tuple(-x for x in e) for e in eqs]
        rays, lin = _double_description(cons, dim)
        return cls._build(dim, rays, lin, facets, eqs)

    @classmethod
    def from_inequalities(cls, ineqs, equations=(), dim: int | None = None) -> "Cone":
        ineqs = [vec(a) for a in ineqs if any(a)]
        equations = [vec(e) for e in equations if any(e)]
        if dim is None:
            dim = len((ineqs + equations)[0])
        cons = ineqs + equations + [tuple(-x for x in e) for e in equations]
        rays, lin = _double_description(cons, dim)
        gens = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
        facets, eqs = _double_description(gens, dim) if gens else ([], [tuple(r) for r in intlat.identity(dim)])
        return cls._build(dim, rays, lin, facets, eqs)

    @classmethod
    def orthant(cls, d: int) -> "Cone":
        return cls.from_rays(intlat.identity(d))

    @property
    def cone_dim(self) -> int:
        return self.dim - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dim(self) -> bool:
        return not self.equations

    def contains(self, x) -> bool:
        return all(dot(h, x) >= 0 for h in self.facets) and all(dot(e, x) == 0 for e in self.equations)

    def relint_contains(self, x) -> bool:
        return all(dot(h, x) > 0 for h in self.facets) and all(dot(e, x) == 0 for e in self.equations)

    def facet_ray_sets(self) -> list[frozenset]:
        """For each facet, the indices of rays on it."""
        return [frozenset(i for i, r in enumerate(self.rays) if dot(h, r) == 0) for h in self.facets]


def dual_cone(c: Cone) -> Cone:
    """The dual cone {u : <u, x> >= 0 for x in c}."""
    return Cone(c.dim, c.facets, c.equations, c.rays, c.lineality)


# ---------------------------------------------------------------------------
# Newton polyhedra


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    generators: tuple
    vertices: tuple
    facets: tuple  # (normal u, offset N(u)), only facets with u != 0
    _hom: Cone = field(repr=False, compare=False)


@dataclass(frozen=True)
class Face:
    """Face of a Newton polyhedron.

    ``recession`` lists the coordinate directions e_j contained in the face,
    ``facet_indices`` the facets of Γ containing it.
    """

    vertex_set: tuple
    recession: tuple
    normal_cone: Cone
    is_compact: bool
    dim: int
    facet_indices: tuple

    @property
    def key(self):
        return (self.vertex_set, self.recession)


def newton_polyhedron(support) -> NewtonPolyhedron:
    """Γ = conv(support) + R^n_{>=0}, through its homogenization cone."""
    support = sorted({vec(m) for m in support})
    if not support:
        raise EmptySupport("the support is empty")
    n = len(support[0])
    if any(len(m) != n for m in support):
        raise intlat.RankMismatch("exponents of different lengths")
    if any(x < 0 for m in support for x in m):
        raise ZetaError("exponents must be nonnegative")
    gens = [m + (1,) for m in support] + [tuple(int(i == j) for j in range(n)) + (0,) for i in range(n)]
    hom = Cone.from_rays(gens, n + 1)
    vertices = tuple(sorted(r[:n] for r in hom.rays if r[n] > 0))
    for r in hom.rays:
        assert r[n] in (0, 1), "homogenization rays must be primitive"
    facets = tuple(sorted((h[:n], -h[n]) for h in hom.facets if any(h[:n])))
    return NewtonPolyhedron(n, tuple(support), vertices, facets, hom)


def support_value(gamma: NewtonPolyhedron, u) -> int:
    """N(u) = min over Γ of <u, .>."""
    u = vec(u)
    if any(x < 0 for x in u):
        raise UnboundedDirection(f"{u} has a negative coordinate")
    return min(dot(u, m) for m in gamma.vertices)


def enumerate_faces(gamma: NewtonPolyhedron) -> list[Face]:
    """All nonempty faces of Γ, including Γ itself, in canonical order
    (by dimension, then vertex set, then recession directions)."""
    n = gamma.dim
    hom = gamma._hom
    all_rays = frozenset(range(len(hom.rays)))
    hset = hom.facet_ray_sets()
    # facets of Γ are the homogenization facets other than x_{n+1} >= 0
    gfacets = [(i, s) for i, s in enumerate(hset) if any(hom.facets[i][:n])]
    faces = {all_rays}
    frontier = [all_rays]
    while frontier:
        nxt = []
        for f in frontier:
            for _, s in gfacets:
                g = f & s
                if g and g not in faces:
                    faces.add(g)
                    nxt.append(g)
        frontier = nxt
    facet_normals = {i: hom.facets[i][:n] for i, _ in gfacets}
    out = []
    for f in faces:
        vrays = [hom.rays[i] for i in f if hom.rays[i][n] > 0]
        if not vrays:
            continue
        rec = tuple(sorted(hom.rays[i][:n].index(1) for i in f if hom.rays[i][n] == 0))
        containing = tuple(sorted(i for i, s in gfacets if f <= s))
        sigma = Cone.from_rays([facet_normals[i] for i in containing], n)
        d = rank([hom.rays[i] for i in f]) - 1
        out.append(Face(tuple(sorted(r[:n] for r in vrays)), rec, sigma, not rec, d, containing))
    out.sort(key=lambda fc: (fc.dim, fc.vertex_set, fc.recession))
    return out


def face_normal(face: Face):
    """A lattice vector in the relative interior of the normal cone."""
    rs = face.normal_cone.rays
    if not rs:
        return tuple([0] * face.normal_cone.dim)
    return tuple(sum(col) for col in zip(*rs))


# ---------------------------------------------------------------------------
# half-open decomposition


@dataclass(frozen=True)
class HalfOpenSimplicialCone:
    """Simplicial cone with some facets removed.

    ``open_facets`` holds indices i (0-based) for which the coefficient of
    ``rays[i]`` must be strictly positive; the other coefficients may vanish.
    """

    dim: int
    rays: tuple
    open_facets: frozenset

    def contains(self, x) -> bool:
        if not self.rays:
            return not any(x)
        try:
            lam = intlat.solve_in_span(self.rays, x)
        except ValueError:
            return False
        return all(l > 0 if i in self.open_facets else l >= 0 for i, l in enumerate(lam))


def _triangulate(c: Cone) -> list[tuple[int, ...]]:
    """Pulling triangulation of a pointed cone using only its rays."""
    rays = c.rays
    hset = c.facet_ray_sets()
    top = frozenset(range(len(rays)))

    @lru_cache(maxsize=None)
    def rk(s):
        return rank([rays[i] for i in s]) if s else 0

    def subfacets(g):
        dg = rk(g)
        cand = {g & s for s in hset if not g <= s}
        cand = [h for h in cand if h and rk(h) == dg - 1]
        return [h for h in cand if not any(h < h2 for h2 in cand)]

    @lru_cache(maxsize=None)
    def tri(g):
        if len(g) == rk(g):
            return [tuple(sorted(g))]
        r0 = min(g)
        out = []
        for h in subfacets(g):
            if r0 in h:
                continue
            for s in tri(h):
                out.append(tuple(sorted(s + (r0,))))
        return out

    return tri(top) if rays else [()]


def half_open_decompose(c: Cone) -> list[HalfOpenSimplicialCone]:
    """Disjoint half-open simplicial cones covering the relative interior of c.

    A facet of a piece is open when a fixed generic interior point lies on
    the inner side of it, i.e. when that point has a positive coefficient on
    the opposite ray. This splits every shared wall consistently.
    """
    if not c.is_pointed:
        raise NotPointed("half-open decomposition needs a pointed cone")
    simplices = _triangulate(c)
    if simplices == [()]:
        return [HalfOpenSimplicialCone(c.dim, (), frozenset())]
    if len(simplices) == 1:
        rs = tuple(c.rays[i] for i in simplices[0])
        return [HalfOpenSimplicialCone(c.dim, rs, frozenset(range(len(rs))))]
    rng = random.Random(len(c.rays) * 7919 + c.dim)
    for _ in range(200):
        w = [rng.randint(1, 10**6) for _ in c.rays]
        y = tuple(sum(wi * r[k] for wi, r in zip(w, c.rays)) for k in range(c.dim))
        pieces = []
        for s in simplices:
            rs = tuple(c.rays[i] for i in s)
            beta = intlat.solve_in_span(rs, y)
            if any(b == 0 for b in beta):
                break
            pieces.append(HalfOpenSimplicialCone(c.dim, rs, frozenset(i for i, b in enumerate(beta) if b > 0)))
        else:
            return pieces
    raise ZetaError("could not find a generic interior point")


def parallelepiped_points(s: HalfOpenSimplicialCone) -> list[tuple]:
    """Lattice points of the half-open fundamental parallelepiped of ``s``.

    Enumerated through the Smith form of the ray matrix, so the count is the
    lattice index of the rays in their saturated span (|det| when square).
    """
    if not s.rays:
        return [tuple([0] * s.dim)]
    cols = intlat.transpose(s.rays)
    _, d, v = intlat.smith_decompose(cols)
    ds = intlat.diagonal(d)
    big = ds[-1]
    # lambda * big as integers: V (k / d) scaled by the largest divisor
    grids = np.meshgrid(*(np.arange(x, dtype=np.int64) * (big // x) for x in ds), indexing="ij")
    mu = np.stack([g.ravel() for g in grids], axis=1)
    lam = mu @ np.array(v, dtype=np.int64).T % big
    for i in s.open_facets:
        lam[:, i] = np.where(lam[:, i] == 0, big, lam[:, i])
    p = lam @ np.array(s.rays, dtype=np.int64)
    assert not (p % big).any()
    pts = np.unique(p // big, axis=0)
    return [tuple(int(x) for x in row) for row in pts]
