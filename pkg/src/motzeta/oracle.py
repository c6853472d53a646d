"""Brute-force verifiers that share no code path with the closed formulas.

Jets are elements of R = F_p[t]/t^(n+1), stored as digit rows and indexed
by sum_i a_i p^i. ``count_jets`` counts x in R^d with f(x) = t^n exactly.
It splits f into blocks with disjoint variables, computes the value
histogram of each block, and combines the histograms by convolution over
the additive group of R. A lone block that is affine in some variable is
counted by solving for that variable instead.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor

import numpy as np

from . import finitefield
from .budget import check_budget, enumeration_budget
from .errors import ZetaError
from .grothring import Laurent
from .intlat import dot, rank, solve_in_span
from .newton import Polynomial, check_nondegenerate
from .polycone import Cone


# ---------------------------------------------------------------------------
# truncated power series over F_p


class _JetRing:
    def __init__(self, p, n):
        self.p, self.n, self.len = p, n, n + 1
        self.size = p ** (n + 1)
        self.pw = np.array([p**i for i in range(n + 1)], dtype=np.int64)

    def digits(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[:, None] // self.pw[None, :]) % self.p

    def index(self, digs):
        return digs @ self.pw

    def all_jets(self, origin=False):
        d = self.digits(np.arange(self.size, dtype=np.int64))
        return d[d[:, 0] == 0] if origin else d

    def mul(self, a, b):
        out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for k in range(self.len):
            out[..., k] = np.einsum("...i,...i->...", a[..., : k + 1], b[..., k::-1]) % self.p
        return out

    def const(self, c, shape):
        out = np.zeros(shape + (self.len,), dtype=np.int64)
        out[..., 0] = c % self.p
        return out

    def poly(self, terms, xs, shape):
        """Evaluate sum c x^m; xs are jet arrays, one per variable."""
        acc = self.const(0, shape)
        cache = {}

        def power(j, e):
            if (j, e) not in cache:
                cache[(j, e)] = xs[j] if e == 1 else self.mul(power(j, e - 1), xs[j])
            return cache[(j, e)]

        for m, c in terms:
            v = None
            for j, e in enumerate(m):
                if e:
                    v = power(j, e) if v is None else self.mul(v, power(j, e))
            v = self.const(c, shape) if v is None else v * (c % self.p)
            acc = (acc + v) % self.p
        return acc

    def order(self, a):
        nz = a != 0
        return np.where(nz.any(axis=-1), nz.argmax(axis=-1), self.len)

    def sub_index(self, a_idx, b_idx):
        """Index of (digits a - digits b)."""
        da, db = self.digits(a_idx), self.digits(b_idx)
        return self.index((da - db) % self.p)


def _blocks(terms, d):
    """Group monomials into blocks with pairwise disjoint variable sets."""
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m, _ in terms:
        vs = [j for j, e in enumerate(m) if e]
        for a in vs[1:]:
            parent[find(a)] = find(vs[0])
    groups = {}
    for m, c in terms:
        j = next(j for j, e in enumerate(m) if e)
        groups.setdefault(find(j), []).append((m, c))
    out = []
    for g in groups.values():
        vs = sorted({j for m, _ in g for j, e in enumerate(m) if e})
        out.append((vs, [(tuple(m[j] for j in vs), c) for m, c in g]))
    return sorted(out)


def _grid(ring, k, origin):
    """All k-tuples of jets, as a list of k arrays of shape (N, len)."""
    if k == 0:
        return []
    base = ring.all_jets(origin)
    idx = np.indices((len(base),) * k).reshape(k, -1)
    return [base[i] for i in idx]


def _histogram(ring, terms, k, origin):
    xs = _grid(ring, k, origin)
    vals = ring.poly(terms, xs, (len(xs[0]),))
    return np.bincount(ring.index(vals), minlength=ring.size).astype(object)


def _affine_variable(terms, k):
    for j in range(k):
        if all(m[j] <= 1 for m, _ in terms) and any(m[j] == 1 for m, _ in terms):
            return j
    return None


def _count_affine(ring, terms, k, j, target_idx, origin):
    """Count solutions with f = A(x') x_j + B(x') by solving for x_j."""
    rest = [i for i in range(k) if i != j]
    xs = _grid(ring, k - 1, origin)
    npts = len(xs[0]) if xs else 1
    shape = (npts,)
    full = [None] * k
    for pos, i in enumerate(rest):
        full[i] = xs[pos]
    one = ring.const(1, shape)
    a_terms = [(tuple(e - (i == j) for i, e in enumerate(m)), c) for m, c in terms if m[j] == 1]
    b_terms = [(m, c) for m, c in terms if m[j] == 0]
    full[j] = one
    a_val = ring.poly(a_terms, full, shape)
    b_val = ring.poly(b_terms, full, shape) if b_terms else ring.const(0, shape)
    r = (ring.digits(np.full(npts, target_idx)) - b_val) % ring.p
    if origin:
        # x_j = t z with z in R (each x_j counted p times)
        a_val = np.concatenate([np.zeros((npts, 1), dtype=np.int64), a_val[:, :-1]], axis=1)
    ka = ring.order(a_val)
    kr = ring.order(r)
    ok = kr >= ka
    counts = np.power(np.int64(ring.p), ka.astype(np.int64)).astype(object)
    total = int(counts[ok].sum()) if ok.any() else 0
    return total // ring.p if origin else total


def count_jets(f: Polynomial, p: int, n: int, origin: bool = False, budget: int | None = None,
               method: str = "auto", stats: dict | None = None) -> int:
    """#{x in (F_p[t]/t^(n+1))^d : f(x) = t^n mod t^(n+1)}.

    With ``origin`` only jets with x(0) = 0 are counted. ``method`` is
    ``auto`` (blocks and elimination) or ``brute`` (one flat loop).
    The number of evaluations is added to ``stats["evaluations"]``.
    """
    stats = {} if stats is None else stats
    stats.setdefault("evaluations", 0)
    if not finitefield.is_prime(p):
        raise ZetaError(f"{p} is not prime")
    if n < 1:
        raise ZetaError("n must be positive")
    budget = enumeration_budget() if budget is None else budget
    ring = _JetRing(p, n)
    d = f.n_vars
    target = p**n
    per_var = p**n if origin else p ** (n + 1)
    if method == "brute":
        stats["evaluations"] += check_budget(per_var**d, "jet enumeration", budget)
        return int(_histogram(ring, f.terms, d, origin)[target])
    blocks = _blocks(f.terms, d)
    used = sum(len(vs) for vs, _ in blocks)
    free = per_var ** (d - used)
    if len(blocks) == 1:
        vs, terms = blocks[0]
        k = len(vs)
        j = _affine_variable(terms, k)
        if j is not None:
            stats["evaluations"] += check_budget(per_var ** (k - 1), "jet enumeration", budget)
            return free * _count_affine(ring, terms, k, j, target, origin)
        stats["evaluations"] += check_budget(per_var**k, "jet enumeration", budget)
        return free * int(_histogram(ring, terms, k, origin)[target])
    cost = sum(per_var ** len(vs) for vs, _ in blocks) + (len(blocks) - 2) * ring.size**2 + ring.size
    stats["evaluations"] += check_budget(cost, "jet enumeration", budget)
    hists = [_histogram(ring, terms, len(vs), origin) for vs, terms in blocks]
    allidx = np.arange(ring.size, dtype=np.int64)
    acc = hists[0]
    for h in hists[1:-1]:
        nxt = np.zeros(ring.size, dtype=object)
        for a in np.nonzero(acc)[0]:
            # (a + b) for all b
            sidx = ring.index((ring.digits(np.full(ring.size, a)) + ring.digits(allidx)) % p)
            np.add.at(nxt, sidx, acc[a] * h)
        acc = nxt
    last = hists[-1]
    comp = ring.sub_index(np.full(ring.size, target), allidx)
    return free * int(sum(acc * last[comp]))


def oracle_zeta_coefficients(f: Polynomial, p: int, n_max: int, origin: bool = False,
                             budget: int | None = None, stats: dict | None = None) -> list[Fraction]:
    """p^(-n d) J_n for n = 1..n_max."""
    d = f.n_vars
    return [Fraction(count_jets(f, p, n, origin, budget, stats=stats), p ** (n * d)) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# truncated cone sums


def _box(constraints, rhs, d):
    """Integer bounding box of {x : <a_i, x> <= r_i} (assumed bounded), via
    exact enumeration of vertices."""
    lo = [None] * d
    hi = [None] * d
    for idx in combinations(range(len(constraints)), d):
        rows = [constraints[i] for i in idx]
        if rank(rows) < d:
            continue
        # solve rows x = r
        cols = [tuple(r[j] for r in rows) for j in range(d)]
        x = solve_in_span(cols, [rhs[i] for i in idx])
        if all(dot(a, x) <= r for a, r in zip(constraints, rhs)):
            for j in range(d):
                lo[j] = x[j] if lo[j] is None else min(lo[j], x[j])
                hi[j] = x[j] if hi[j] is None else max(hi[j], x[j])
    if lo[0] is None:
        return None
    return [(ceil(a), floor(b)) for a, b in zip(lo, hi)]


def brute_cone_sum(M_cone: Cone, omega_vec, et_vec, k: int, weight_cap: int | None = None,
                   budget: int | None = None) -> list[Laurent]:
    """(L-1)^(d-1) times the sum of L^-<u,omega> T^<u,e_t> over lattice points
    u with <r,u> >= 1 for every generator r of the cone, truncated at T^k.
    ``M_cone`` may be a Cone or a plain list of generators; the latter keeps
    the check independent of the double description code.

    When some interior directions have <u,e_t> = 0 the sum is infinite in
    the L-direction; ``weight_cap`` then bounds <u,omega> and only the
    L-exponents above -weight_cap + d - 1 are exact.
    """
    if isinstance(M_cone, Cone):
        rays, d = list(M_cone.rays), M_cone.dim
    else:
        rays = [tuple(int(x) for x in r) for r in M_cone]
        d = len(rays[0])
    et, om = tuple(et_vec), tuple(omega_vec)
    cons = [tuple(-x for x in r) for r in rays] + [et]
    rhs = [-1] * len(rays) + [k]
    if weight_cap is not None:
        cons.append(om)
        rhs.append(weight_cap)
    box = _box(cons, rhs, d)
    coeffs = [Laurent() for _ in range(k)]
    lm1 = Laurent({1: 1, 0: -1}) ** (d - 1)
    if box is None:
        return coeffs
    lows = np.array([a for a, _ in box], dtype=np.int64)
    dims = [max(0, b - a + 1) for a, b in box]
    size = int(np.prod(dims, dtype=object))
    check_budget(size, "cone enumeration", budget)
    ray_m = np.array(rays, dtype=np.int64).reshape(len(rays), d)
    et_a, om_a = np.array(et, dtype=np.int64), np.array(om, dtype=np.int64)
    acc = [dict() for _ in range(k)]
    chunk = 1 << 20
    for start in range(0, size, chunk):
        flat = np.arange(start, min(start + chunk, size), dtype=np.int64)
        u = np.stack(np.unravel_index(flat, dims), axis=1) + lows if size else np.zeros((0, d), dtype=np.int64)
        u = u[(u @ ray_m.T >= 1).all(axis=1)]
        t = u @ et_a
        if (t < 1).any():
            raise ZetaError("interior point with nonpositive T-degree")
        w = u @ om_a
        keep = t <= k
        if weight_cap is not None:
            keep &= w <= weight_cap
        pairs, counts = np.unique(np.stack([t[keep], w[keep]], axis=1), axis=0, return_counts=True)
        for (ti, wi), c in zip(pairs.tolist(), counts.tolist()):
            acc[ti - 1][-wi] = acc[ti - 1].get(-wi, 0) + c
    return [Laurent(a) * lm1 for a in acc]


# ---------------------------------------------------------------------------
# end-to-end comparison


@dataclass
class CheckRecord:
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class VerificationReport:
    target: str
    status: str  # "checked" or "inapplicable"
    checks: list = field(default_factory=list)
    budget_spent: int = 0
    note: str = ""

    @property
    def overall(self) -> bool:
        return self.status == "checked" and all(c.passed for c in self.checks)


def verify(f: Polynomial, p: int, n_max: int, local: bool = False, budget: int | None = None) -> VerificationReport:
    """Compare the Newton formula at q = p with jet counts, coefficient by coefficient."""
    from .genfun import series_numeric
    from .zeta import zeta_newton

    scope = "compact_faces" if local else "all_faces"
    target = f"{'local ' if local else ''}Z_f for f = {f} at p = {p}, n <= {n_max}"
    nd = check_nondegenerate(f, scope, [p], budget)
    if not nd.passed:
        bad = "; ".join(
            f"conv{list(c.face.vertex_set)}" + (" + cone(" + ", ".join(f"e{i + 1}" for i in c.face.recession) + ")" if c.face.recession else "")
            for c in nd.failing_faces()
        )
        return VerificationReport(target, "inapplicable", note=f"degenerate over F_{p} on faces {bad}")
    g = zeta_newton(f, "local" if local else "global")
    lhs = series_numeric(g, p, n_max)[1:]
    stats = {"evaluations": 0}
    rhs = oracle_zeta_coefficients(f, p, n_max, origin=local, budget=budget, stats=stats)
    rep = VerificationReport(target, "checked", budget_spent=stats["evaluations"])
    rep.checks = [CheckRecord(i + 1, a, b) for i, (a, b) in enumerate(zip(lhs, rhs))]
    return rep
