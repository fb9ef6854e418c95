"""Exact integer linear algebra on immutable vectors and matrices.

Vectors are tuples of Python ints, matrices are tuples of row tuples, and
every computation is arbitrary precision.  Operations that return non-unique
objects (basis completion, the bounded solver) fix an explicit tie-breaking
rule so downstream artifacts are reproducible byte for byte.

Hermite form convention used throughout the package: row-style, lower-left.
``hermite_normal_form(m)`` returns ``(h, u)`` with ``u`` unimodular and
``u . m == h``, where the pivot of a nonzero row is its *last* nonzero entry,
pivots are positive, pivot columns strictly increase from top to bottom,
zero rows come first, and entries below a pivot lie in ``[0, pivot)``.
"""

from __future__ import annotations

import itertools
from math import gcd

from .errors import DimensionMismatch, NotABasis, NotPrimitive, ZeroVector

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def vec(xs) -> Vec:
    return tuple(int(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def zero_vec(n: int) -> Vec:
    return (0,) * n


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_mat(rows: int, cols: int) -> Mat:
    return tuple((0,) * cols for _ in range(rows))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def scale(c: int, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def dot(u: Vec, v: Vec) -> int:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def is_zero(v: Vec) -> bool:
    return all(a == 0 for a in v)


def mat_vec(m: Mat, v: Vec) -> Vec:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"mat_vec: {len(m[0])} cols vs {len(v)}")
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"mat_mul: {len(a[0])} vs {len(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g.

    When a divides b, y is guaranteed to be 0.
    """
    if a != 0 and b % a == 0:
        return (a, 1, 0) if a > 0 else (-a, -1, 0)
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# -- normal forms -----------------------------------------------------------

def _hnf_upper(m: Mat) -> tuple[list[list[int]], list[list[int]]]:
    """Classic row HNF: first-nonzero pivots, zero rows last, entries above
    a pivot reduced into [0, pivot).  Returns mutable (h, u) with u.m = h."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(row) for row in m]
    u = [list(row) for row in identity(rows)]

    def combine(i: int, k: int, c: int) -> None:
        # rows i, k mixed by the unimodular block from xgcd on column c
        a, b = h[i][c], h[k][c]
        g, x, y = xgcd(a, b)
        p, q = a // g, b // g
        hi, hk = h[i], h[k]
        h[i] = [x * s + y * t for s, t in zip(hi, hk)]
        h[k] = [-q * s + p * t for s, t in zip(hi, hk)]
        ui, uk = u[i], u[k]
        u[i] = [x * s + y * t for s, t in zip(ui, uk)]
        u[k] = [-q * s + p * t for s, t in zip(ui, uk)]

    r = 0
    for c in range(cols):
        if r >= rows:
            break
        for k in range(r + 1, rows):
            if h[k][c] != 0:
                combine(r, k, c)
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
    return h, u


def hermite_normal_form(m: Mat) -> tuple[Mat, Mat]:
    """Lower-left row Hermite form.

    Returns (h, u) with u unimodular and u.m = h; see the module docstring
    for the exact shape.  Computed by mirroring the classic upper form.
    """
    rows = len(m)
    flipped = tuple(tuple(reversed(row)) for row in reversed(m))
    h1, u1 = _hnf_upper(flipped)
    h = tuple(tuple(reversed(row)) for row in reversed(h1))
    u = tuple(tuple(reversed(row)) for row in reversed(u1))
    # sanity: the mirror of u acts on mirrored rows; undo both reversals
    assert len(u) == rows
    return h, u


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith form: returns (d, u, v) with u, v unimodular, u.m.v = d diagonal
    and d[0][0] | d[1][1] | ... (nonnegative entries, zeros trailing)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(row) for row in m]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def row_combine(i, k, c):
        # zero d[k][c] against d[i][c]; pure transvection when one entry
        # divides the other (keeps the pivot row intact), gcd mix otherwise
        a, b = d[i][c], d[k][c]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            d[k] = [t - q * s for s, t in zip(d[i], d[k])]
            u[k] = [t - q * s for s, t in zip(u[i], u[k])]
            return
        if a == 0:
            d[i], d[k] = d[k], d[i]
            u[i], u[k] = u[k], u[i]
            return
        if a % b == 0:
            q = a // b
            d[i] = [s - q * t for s, t in zip(d[i], d[k])]
            u[i] = [s - q * t for s, t in zip(u[i], u[k])]
            d[i], d[k] = d[k], d[i]
            u[i], u[k] = u[k], u[i]
            return
        g, x, y = xgcd(a, b)
        p, q = a // g, b // g
        di, dk = d[i], d[k]
        d[i] = [x * s + y * t for s, t in zip(di, dk)]
        d[k] = [-q * s + p * t for s, t in zip(di, dk)]
        ui, uk = u[i], u[k]
        u[i] = [x * s + y * t for s, t in zip(ui, uk)]
        u[k] = [-q * s + p * t for s, t in zip(ui, uk)]

    def col_combine(j, k, r):
        a, b = d[r][j], d[r][k]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            for row in d:
                row[k] -= q * row[j]
            for row in v:
                row[k] -= q * row[j]
            return
        if a == 0:
            for row in d:
                row[j], row[k] = row[k], row[j]
            for row in v:
                row[j], row[k] = row[k], row[j]
            return
        if a % b == 0:
            q = a // b
            for row in d:
                row[j] -= q * row[k]
                row[j], row[k] = row[k], row[j]
            for row in v:
                row[j] -= q * row[k]
                row[j], row[k] = row[k], row[j]
            return
        g, x, y = xgcd(a, b)
        p, q = a // g, b // g
        for row in d:
            s, t = row[j], row[k]
            row[j] = x * s + y * t
            row[k] = -q * s + p * t
        for row in v:
            s, t = row[j], row[k]
            row[j] = x * s + y * t
            row[k] = -q * s + p * t

    def clear_at(t):
        # loop until row t and column t vanish beyond the diagonal; each pass
        # either finishes or strictly shrinks |d[t][t]|
        while True:
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    row_combine(t, i, t)
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    col_combine(t, j, t)
            if all(d[i][t] == 0 for i in range(t + 1, rows)) and all(
                d[t][j] == 0 for j in range(t + 1, cols)
            ):
                break

    n = min(rows, cols)
    for t in range(n):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            d[t], d[bi] = d[bi], d[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in d:
                row[t], row[bj] = row[bj], row[t]
            for row in v:
                row[t], row[bj] = row[bj], row[t]
        clear_at(t)
        # absorb rows carrying entries not divisible by the pivot; every
        # absorption strictly shrinks |d[t][t]|, so this terminates and
        # leaves the whole remaining block divisible by the pivot
        while True:
            piv = d[t][t]
            culprit = None
            for i in range(t + 1, rows):
                if any(d[i][j] % piv != 0 for j in range(t + 1, cols)):
                    culprit = i
                    break
            if culprit is None:
                break
            d[t] = [a + b for a, b in zip(d[t], d[culprit])]
            u[t] = [a + b for a, b in zip(u[t], u[culprit])]
            clear_at(t)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return mat(d), mat(u), mat(v)


def determinant(m: Mat) -> int:
    """Fraction-free Bareiss determinant of a square matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(m: Mat) -> int:
    h, _ = hermite_normal_form(m)
    return sum(1 for row in h if not is_zero(row))


def unimodular_inverse(m: Mat) -> Mat:
    """Inverse of a unimodular matrix (|det| = 1); raises NotABasis otherwise."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotABasis("matrix is not square")
    h, u = hermite_normal_form(m)
    if h != identity(n):
        raise NotABasis("matrix is not unimodular")
    return u


# -- primitive vectors and bases --------------------------------------------

def primitive(v: Vec) -> Vec:
    """v divided by the gcd of its coordinates; sign pattern preserved."""
    if is_zero(v):
        raise ZeroVector("primitive of the zero vector")
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return tuple(a // g for a in v)


def extend_to_basis(v: Vec) -> tuple[Vec, ...]:
    """Basis n_1, ..., n_r of the ambient lattice with n_1 = v.

    v must be primitive.  Deterministic: built from a left-to-right chain of
    extended gcd steps, so equal inputs give identical bases.
    """
    if is_zero(v):
        raise ZeroVector("cannot extend the zero vector")
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g != 1:
        raise NotPrimitive(f"{v} has coordinate gcd {g}")
    n = len(v)
    # winv tracks the inverse of the column-operation matrix W with v.W = e1;
    # its rows are the basis we want (first row stays v throughout).
    winv = [list(row) for row in identity(n)]
    cur = v[0]
    for j in range(1, n):
        a, b = cur, v[j]
        g, x, y = xgcd(a, b)
        if g == 0:
            continue
        p, q = a // g, b // g
        r0, rj = winv[0], winv[j]
        winv[0] = [p * s + q * t for s, t in zip(r0, rj)]
        winv[j] = [-y * s + x * t for s, t in zip(r0, rj)]
        cur = g
    if cur < 0:
        # happens only when no gcd step ran, i.e. v = (-1, 0, ..., 0)
        winv[0] = [-s for s in winv[0]]
    basis = mat(winv)
    assert basis[0] == v
    return basis


def dual_basis(b) -> tuple[Vec, ...]:
    """m_1, ..., m_r with <n_i, m_j> = delta_ij for a unimodular basis n_i."""
    rows = mat(b)
    inv = unimodular_inverse(rows)
    return transpose(inv)


# -- solving ----------------------------------------------------------------

def solve_nonneg(a: Mat, b: Vec, bound: int) -> Vec | None:
    """Lexicographically least x with 0 <= x_i <= bound and a.x = b, or None.

    Straight DFS over coordinates with interval pruning; exact and
    deterministic.  Intended for small systems.
    """
    if bound < 0:
        raise DimensionMismatch("bound must be nonnegative")
    rows = len(a)
    if rows != len(b):
        raise DimensionMismatch(f"solve_nonneg: {rows} rows vs rhs {len(b)}")
    cols = len(a[0]) if rows else 0
    if rows and any(len(row) != cols for row in a):
        raise DimensionMismatch("ragged matrix")
    if cols == 0:
        return () if is_zero(b) else None
    # suffix bounds: what columns j..cols-1 can still contribute per row
    lo = [[0] * rows for _ in range(cols + 1)]
    hi = [[0] * rows for _ in range(cols + 1)]
    for j in range(cols - 1, -1, -1):
        for i in range(rows):
            c = a[i][j]
            lo[j][i] = lo[j + 1][i] + min(0, c * bound)
            hi[j][i] = hi[j + 1][i] + max(0, c * bound)

    x = [0] * cols

    def rec(j: int, resid: list[int]) -> bool:
        if j == cols:
            return all(r == 0 for r in resid)
        for i in range(rows):
            if not (lo[j][i] <= resid[i] <= hi[j][i]):
                return False
        col = [a[i][j] for i in range(rows)]
        for val in range(bound + 1):
            x[j] = val
            nresid = [resid[i] - val * col[i] for i in range(rows)]
            if rec(j + 1, nresid):
                return True
        x[j] = 0
        return False

    if rec(0, list(b)):
        return tuple(x)
    return None


def kernel_basis(a: Mat) -> tuple[Vec, ...]:
    """Basis of the integer kernel {x : a.x = 0}; saturated by construction."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return ()
    if rows == 0:
        return identity(cols)
    d, _, v = smith_normal_form(a)
    out = []
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        if dj == 0:
            out.append(tuple(v[i][j] for i in range(cols)))
    return tuple(out)


def solve_integer(a: Mat, b: Vec) -> Vec | None:
    """Some integer x with a.x = b, or None; deterministic particular solution."""
    rows = len(a)
    if rows != len(b):
        raise DimensionMismatch("solve_integer shape")
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return () if is_zero(b) else None
    d, u, v = smith_normal_form(a)
    ub = mat_vec(u, b)
    z = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            z[i] = ub[i] // di
    return mat_vec(v, tuple(z))


# -- sublattices ------------------------------------------------------------

def span_basis(vectors, rank: int | None = None) -> tuple[Vec, ...]:
    """Canonical (Hermite) basis of the lattice spanned by the given rows."""
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return ()
    h, _ = hermite_normal_form(mat(vs))
    return tuple(row for row in h if not is_zero(row))


def saturation_basis(vectors) -> tuple[Vec, ...]:
    """Canonical basis of the saturation of the span (x with k.x in span)."""
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return ()
    a = mat(vs)
    d, _, v = smith_normal_form(a)
    vinv = unimodular_inverse(v)
    rows = []
    for i in range(min(len(a), len(a[0]))):
        if d[i][i] != 0:
            rows.append(tuple(vinv[i]))
    return span_basis(rows)


def is_saturated_lattice(vectors) -> bool:
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return True
    a = mat(vs)
    d, _, _ = smith_normal_form(a)
    for i in range(min(len(a), len(a[0]))):
        if d[i][i] not in (0, 1):
            return False
    return True


def quotient_projection(basis_rows: Mat, rank: int) -> tuple[Mat, Mat]:
    """Projection and section for the quotient by a saturated sublattice.

    basis_rows: independent rows spanning a saturated sublattice of Z^rank.
    Returns (proj, lift): proj is (rank-k) x rank with kernel exactly the
    sublattice, lift is rank x (rank-k) with proj.lift = identity.
    Raises NotABasis when the rows are dependent or the span is unsaturated.
    """
    k = len(basis_rows)
    if k == 0:
        return identity(rank), identity(rank)
    d, _, v = smith_normal_form(basis_rows)
    for i in range(k):
        if d[i][i] != 1:
            raise NotABasis("rows do not span a saturated rank-k sublattice")
    vt = transpose(v)
    proj = vt[k:]
    vinv = unimodular_inverse(v)
    lift = transpose(vinv[k:])
    return proj, lift


def coordinates_in_span(basis_rows: Mat, x: Vec) -> Vec | None:
    """Coordinates c with sum(c_i * row_i) = x, or None if x is outside."""
    if not basis_rows:
        return () if is_zero(x) else None
    return solve_integer(transpose(basis_rows), x)


def in_span(basis_rows: Mat, x: Vec) -> bool:
    return coordinates_in_span(basis_rows, x) is not None


def enumerate_box(lows: Vec, highs: Vec):
    """Iterate integer points of a box in lexicographic order."""
    ranges = [range(lo, hi + 1) for lo, hi in zip(lows, highs)]
    return (tuple(p) for p in itertools.product(*ranges))
