"""Exact integer linear algebra.

Vectors are tuples of Python ints and matrices are tuples of row tuples.
Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, ImageZero, NoSolution, RankMismatch, ZeroVector

Vector = tuple
Matrix = tuple


def vec(v) -> Vector:
    return tuple(int(x) for x in v)


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m, cols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_mul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(m, v) -> Vector:
    return tuple(dot(row, v) for row in m)


def content_and_primitive(v) -> tuple[int, Vector]:
    """Split ``v`` as content times a primitive vector."""
    v = vec(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("content of the zero vector is undefined")
    return g, tuple(x // g for x in v)


def primitive(v) -> Vector:
    return content_and_primitive(v)[1]


def _check_ranks(gens) -> int | None:
    n = None
    for g in gens:
        if n is None:
            n = len(g)
        elif len(g) != n:
            raise RankMismatch(f"generators of lengths {n} and {len(g)}")
    return n


def _row_hermite(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form: nonzero rows, strictly increasing pivots,
    positive pivots, entries above each pivot reduced into [0, pivot)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        # Euclid on the column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for i in range(ncols):
                    r[i] -= q * piv[i]
        out.append(piv)
        rows = rest
        col += 1
    return out


def hermite_basis(gens: Sequence[Sequence[int]], dim: int | None = None) -> Matrix:
    """Basis of the sublattice generated by ``gens`` in column Hermite form.

    The result is a ``dim x k`` matrix whose columns are the basis vectors.
    Column ``j`` has its first nonzero entry (positive) strictly below that of
    column ``j-1``, and entries of later columns in a pivot row are reduced.
    """
    n = _check_ranks(gens)
    if n is None:
        n = dim or 0
    basis = _row_hermite([list(vec(g)) for g in gens])
    return transpose(tuple(tuple(r) for r in basis), n)


def basis_vectors(h: Matrix) -> list[Vector]:
    """Columns of a basis matrix as vectors."""
    if not h or not h[0]:
        return []
    return [tuple(col) for col in zip(*h)]


def lattice_contains(h: Matrix, v) -> bool:
    """Membership test by back-substitution against a Hermite basis."""
    v = list(vec(v))
    for b in basis_vectors(h):
        p = next(i for i, x in enumerate(b) if x != 0)
        if v[p] % b[p]:
            return False
        c = v[p] // b[p]
        v = [x - c * y for x, y in zip(v, b)]
    return not any(v)


def smith_decompose(m) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular U, V and diagonal D with ``U m V = D``.

    The diagonal is nonnegative and each entry divides the next.
    """
    a = [list(vec(r)) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                    for r in v:
                        r[j] -= q * r[t]
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    freeze = lambda x: tuple(tuple(r) for r in x)
    return freeze(u), freeze(a), freeze(v)


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_linear_diophantine(a, b) -> Vector:
    """Some integer ``x`` with ``a x = b``; raises NoSolution if none exists."""
    a = tuple(vec(r) for r in a)
    b = vec(b)
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} equations but {len(b)} right-hand sides")
    if not a:
        return ()
    nc = len(a[0])
    u, d, v = smith_decompose(a)
    c = mat_vec(u, b)
    y = [0] * nc
    for i, ci in enumerate(c):
        di = d[i][i] if i < nc else 0
        if di == 0:
            if ci != 0:
                raise NoSolution("inconsistent system")
        elif ci % di:
            raise NoSolution("no integer solution")
        else:
            y[i] = ci // di
    return mat_vec(v, y)


def divisibility_index(v, sub: Sequence[Sequence[int]]) -> int:
    """Largest ``r`` such that the image of ``v`` modulo the saturation of
    the sublattice spanned by ``sub`` is ``r`` times a lattice element."""
    v = vec(v)
    if not sub:
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            raise ImageZero("zero vector")
        return g
    if _check_ranks(sub) != len(v):
        raise RankMismatch("sublattice and vector have different ranks")
    cols = transpose(tuple(vec(s) for s in sub))
    u, d, _ = smith_decompose(cols)
    r = sum(1 for x in diagonal(d) if x)
    g = 0
    for x in mat_vec(u, v)[r:]:
        g = gcd(g, x)
    if g == 0:
        raise ImageZero("vector lies in the saturated sublattice")
    return g


def kernel_basis(a, ncols: int) -> list[Vector]:
    """Integer basis of {x : a x = 0} (a saturated lattice)."""
    a = tuple(vec(r) for r in a)
    if not a:
        return [tuple(r) for r in identity(ncols)]
    _, d, v = smith_decompose(a)
    r = sum(1 for x in diagonal(d) if x)
    vt = transpose(v)
    return [tuple(vt[j]) for j in range(r, ncols)]


def rank(rows) -> int:
    """Rank over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def determinant(m) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(vec(r)) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_in_span(gens, target) -> tuple[Fraction, ...]:
    """Rational coefficients c with sum c_i gens_i = target.

    ``gens`` must be linearly independent and ``target`` in their span.
    """
    k = len(gens)
    n = len(target)
    # augmented system: columns are generators
    m = [[Fraction(gens[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(row, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("generators are linearly dependent")
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][c]
        m[row] = [x * inv for x in m[row]]
        for i in range(n):
            if i != row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        pivots.append(c)
        row += 1
    if any(m[i][k] != 0 for i in range(row, n)):
        raise ValueError("target is not in the span")
    return tuple(m[i][k] for i in range(k))
