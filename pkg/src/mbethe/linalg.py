"""Exact dense linear algebra over the rationals.

Matrices are plain lists of lists of rationals. Determinants run through
fraction-free Bareiss elimination on a denominator-cleared integer copy, which
bounds intermediate entry growth; pivoting picks the first nonzero entry, so
results are bit-for-bit deterministic.
"""

from __future__ import annotations

from math import gcd

from .scalars import Rat

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int


def det(matrix) -> Rat:
    """Determinant of a square rational matrix; the 0x0 determinant is 1."""
    n = len(matrix)
    if n == 0:
        return Rat(1)
    scale = Rat(1)
    rows = []
    for row in matrix:
        assert len(row) == n, "matrix must be square"
        lcm = 1
        cells = [Rat(x) for x in row]
        for x in cells:
            d = x.denominator
            lcm = lcm // gcd(lcm, int(d)) * int(d)
        scale *= lcm
        rows.append([mpz(x.numerator * (lcm // int(x.denominator))) for x in cells])
    return Rat(_bareiss_int(rows, n)) / scale


def _bareiss_int(rows, n):
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return mpz(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - lead * rk[j]) // prev
            ri[k] = mpz(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        arow = a[i]
        orow = []
        for j in range(cols):
            acc = Rat(0)
            for k in range(inner):
                acc += arow[k] * b[k][j]
            orow.append(acc)
        out.append(orow)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    s = Rat(s)
    return [[s * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_vec(a, v):
    return [sum((row[k] * v[k] for k in range(len(v))), Rat(0)) for row in a]


def identity(n):
    return [[Rat(1) if i == j else Rat(0) for j in range(n)] for i in range(n)]


def zeros(rows, cols=None):
    cols = rows if cols is None else cols
    return [[Rat(0) for _ in range(cols)] for _ in range(rows)]


def kron(a, b):
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            aij = a[i][j]
            if aij == 0:
                continue
            for p in range(rb):
                for q in range(cb):
                    out[i * rb + p][j * cb + q] = aij * b[p][q]
    return out


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def nullspace_vector(matrix, ncols):
    """One deterministic nonzero kernel vector of a rational matrix, or None.

    Gaussian elimination with first-nonzero pivoting; the first free column is
    set to 1 and bound variables are back-substituted.
    """
    rows = [[Rat(x) for x in row] for row in matrix]
    nrows = len(rows)
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(ncols) if c not in pivot_cols), None)
    if free is None:
        return None
    vec = [Rat(0)] * ncols
    vec[free] = Rat(1)
    for r, col in pivots:
        vec[col] = -rows[r][free]
    return vec
