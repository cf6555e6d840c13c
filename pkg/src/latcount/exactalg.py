"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ``int`` (or
``fractions.Fraction``) entries, so every value is immutable and every
operation is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionError, SingularMatrixError


def as_matrix(rows):
    """Freeze a nested sequence of integers into a tuple-of-tuples matrix."""
    M = tuple(tuple(int(v) for v in row) for row in rows)
    if not M or not M[0]:
        raise DimensionError("matrix must have at least one row and column")
    if any(len(row) != len(M[0]) for row in M):
        raise DimensionError("ragged matrix")
    return M


def shape(M):
    return len(M), len(M[0])


def _check_square(M):
    m, n = shape(M)
    if m != n:
        raise DimensionError(f"expected a square matrix, got {m}x{n}")
    return m


def identity(m):
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def transpose(M):
    return tuple(zip(*M))


def columns(M, idx):
    """Submatrix made of the columns listed in ``idx`` (0-based)."""
    return tuple(tuple(row[j] for j in idx) for row in M)


def column(M, j):
    return tuple(row[j] for row in M)


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def determinant(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = _check_square(M)
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def inverse_rational(M):
    """Exact inverse over the rationals (Gauss-Jordan on ``Fraction``)."""
    m = _check_square(M)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(m)]
         for i, row in enumerate(M)]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[m:]) for row in a)


def adjugate(M):
    """Integer adjugate, returned together with the determinant.

    ``M @ adj == det * I``; for a singular matrix a
    :class:`SingularMatrixError` is raised.
    """
    det = determinant(M)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    inv = inverse_rational(M)
    adj = tuple(tuple(int(v * det) for v in row) for row in inv)
    return adj, det


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == diag(d)`` with ``U``, ``V`` unimodular."""

    U: tuple
    V: tuple
    d: tuple

    def diagonal_matrix(self):
        m = len(self.d)
        return tuple(tuple(self.d[i] if i == j else 0 for j in range(m)) for i in range(m))


def smith_normal_form(M):
    """Smith normal form of a nonsingular square integer matrix.

    Gcd-driven row/column reduction; the row operations are accumulated in
    ``U`` and the column operations in ``V``.
    """
    m = _check_square(M)
    if determinant(M) == 0:
        raise SingularMatrixError("Smith form requires a nonsingular matrix")
    S = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    V = [list(row) for row in identity(m)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in S:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(m):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            _, pi, pj = min((abs(S[i][j]), i, j)
                            for i in range(t, m) for j in range(t, m) if S[i][j] != 0)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
                if S[i][t]:
                    dirty = True
            for j in range(t + 1, m):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(S[i][j] % p for j in range(t + 1, m))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]

    d = tuple(S[i][i] for i in range(m))
    return SmithDecomposition(tuple(map(tuple, U)), tuple(map(tuple, V)), d)


def is_integral(v):
    return all(Fraction(x).denominator == 1 for x in v)


def floor_vector(v):
    return tuple(Fraction(x).__floor__() for x in v)


def ceil_vector(v):
    return tuple(Fraction(x).__ceil__() for x in v)


def gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
