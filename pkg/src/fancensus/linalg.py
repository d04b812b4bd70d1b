"""Exact rational / integer linear algebra on small dense matrices.

Everything here works on tuples of Fractions (or plain ints where noted) and
is deliberately dimension-agnostic but only tuned for the tiny sizes this
package needs (n <= 8 or so).  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
IVec = tuple[int, ...]
Mat = tuple[Vec, ...]


def fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(fr(x) for x in xs)


def ivec(xs: Iterable) -> IVec:
    out = []
    for x in xs:
        f = fr(x)
        if f.denominator != 1:
            raise ValueError(f"not an integer entry: {x}")
        out.append(int(f))
    return tuple(out)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum((fr(x) * fr(y) for x, y in zip(a, b)), Fraction(0))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vec:
    c = fr(c)
    return tuple(c * fr(x) for x in a)


def is_zero(a: Sequence) -> bool:
    return all(fr(x) == 0 for x in a)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence]) -> Mat:
    if not m:
        return ()
    return tuple(tuple(fr(m[i][j]) for i in range(len(m))) for j in range(len(m[0])))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


# ---------------------------------------------------------------------------
# Gaussian elimination over Q

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    m = [[fr(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + [[Fraction(0)] * ncols for _ in range(len(m) - r)], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vec]:
    """Basis of {x : M x = 0} over Q (one vector per free column)."""
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """One solution of M x = rhs over Q, or None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    n = len(rows[0]) if rows else 0
    if n in pivots:  # pivot in the rhs column
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# Integer lattice routines

def primitive(v: Sequence[int]) -> IVec:
    """Divide an integer vector by the gcd of its entries (keeps direction)."""
    v = ivec(v)
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return v
    return tuple(x // g for x in v)


def primitive_of_rational(v: Sequence) -> IVec:
    """Primitive integer vector spanning the same ray as a rational vector."""
    fv = [fr(x) for x in v]
    den = 1
    for x in fv:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(x * den) for x in fv])


def sign_normalized(v: Sequence[int]) -> IVec:
    """Primitive vector with the first nonzero entry positive (line canonical)."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def _col_hnf_transform(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite reduction: returns (H, U) with A·U = H, U unimodular.

    H has its nonzero columns first, echelon by rows top-down.  Only the
    structure (which columns are zero) matters to callers here, so no effort
    is made to fully reduce off-pivot entries.
    """
    m = [[int(x) for x in row] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j, k, f):
        # col_j += f * col_k
        for i in range(nrows):
            m[i][j] += f * m[i][k]
        for i in range(ncols):
            u[i][j] += f * u[i][k]

    def col_swap(j, k):
        for i in range(nrows):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(ncols):
            u[i][j], u[i][k] = u[i][k], u[i][j]

    pivot_col = 0
    for r in range(nrows):
        if pivot_col >= ncols:
            break
        # euclidean reduction across columns pivot_col..end on row r
        while True:
            nz = [j for j in range(pivot_col, ncols) if m[r][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(m[r][j]))
            col_swap(pivot_col, jmin)
            done = True
            for j in range(pivot_col + 1, ncols):
                if m[r][j] != 0:
                    q = m[r][j] // m[r][pivot_col]
                    col_op(j, pivot_col, -q)
                    if m[r][j] != 0:
                        done = False
            if done:
                break
        if m[r][pivot_col] != 0:
            if m[r][pivot_col] < 0:
                col_op(pivot_col, pivot_col, -2)  # negate: c += -2c
            pivot_col += 1
    return m, u


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[IVec]:
    """Basis of the saturated integer kernel {w in Z^ncols : A w = 0}.

    The basis spans the full kernel lattice (not a finite-index sublattice):
    it is read off the unimodular transform of a column Hermite reduction.
    """
    if ncols is None:
        if not a:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(a[0])
    if not a:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    h, u = _col_hnf_transform(a)
    out = []
    for j in range(ncols):
        if all(h[i][j] == 0 for i in range(len(h))):
            out.append(tuple(u[i][j] for i in range(ncols)))
    return out


def integer_solve(a: Sequence[Sequence[int]], rhs: Sequence[int]) -> IVec | None:
    """One integer solution of A x = rhs, or None (set is a coset of the kernel)."""
    h, u = _col_hnf_transform(a)
    nrows, ncols = len(a), len(a[0])
    # forward-substitute through the column-echelon H
    y = [0] * ncols
    b = [int(v) for v in rhs]
    col = 0
    for r in range(nrows):
        if col < ncols and h[r][col] != 0:
            if b[r] % h[r][col] != 0:
                return None
            y[col] = b[r] // h[r][col]
            for i in range(nrows):
                b[i] -= y[col] * h[i][col]
            col += 1
        elif b[r] != 0:
            return None
    if any(x != 0 for x in b):
        return None
    return tuple(sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols))


def lattice_index_check(basis: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]]) -> bool:
    """True iff every integer vector in span_Q(vectors) that lies in Z^n is an
    integer combination of `basis` rows — i.e. the basis lattice is saturated
    and contains the vectors."""
    for v in vectors:
        sol = integer_solve([list(col) for col in zip(*basis)], v) if basis else None
        if sol is None:
            if not is_zero(v):
                return False
    # saturation: the gcd of the maximal minors of the basis matrix must be 1
    rows = [list(map(int, b)) for b in basis]
    k = len(rows)
    if k == 0:
        return True
    n = len(rows[0])
    from itertools import combinations

    g = 0
    for cols in combinations(range(n), k):
        sub = [[rows[i][j] for j in cols] for i in range(k)]
        g = gcd(g, abs(int_det(sub)))
        if g == 1:
            return True
    return g == 1


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a small integer matrix (fraction-free via Fractions)."""
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    assert det.denominator == 1
    return int(det)


def lcm_denominators(vs: Iterable[Sequence]) -> int:
    out = 1
    for v in vs:
        for x in v:
            d = fr(x).denominator
            out = out * d // gcd(out, d)
    return out
