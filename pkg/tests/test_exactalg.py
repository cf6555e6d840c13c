import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcount import exactalg as ea
from latcount.errors import DimensionError, SingularMatrixError


def minors_gcd(M, k):
    m = len(M)
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(m), k):
            g = gcd(g, ea.determinant(tuple(tuple(M[i][j] for j in cols) for i in rows)))
    return g


def invariant_factors_by_minors(M):
    """Independent oracle: d_k = D_k / D_{k-1} with D_k the gcd of k x k minors."""
    out, prev = [], 1
    for k in range(1, len(M) + 1):
        Dk = minors_gcd(M, k)
        out.append(Dk // prev)
        prev = Dk
    return tuple(out)


square = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=m, max_size=m))


@pytest.mark.parametrize("M, det", [
    (((1, 1), (0, 2)), 2),
    (((0, 1), (1, 1)), -1),
    (ea.identity(3), 1),
    (((2, 4), (1, 2)), 0),
])
def test_determinant(M, det):
    assert ea.determinant(M) == det


def test_determinant_rejects_rectangular():
    with pytest.raises(DimensionError):
        ea.determinant(((1, 2),))


def test_inverse_examples():
    F = Fraction
    assert ea.inverse_rational(((1, 1), (0, 2))) == ((1, F(-1, 2)), (0, F(1, 2)))
    assert ea.inverse_rational(ea.identity(3)) == ea.identity(3)
    assert ea.inverse_rational(((2,),)) == ((F(1, 2),),)
    with pytest.raises(SingularMatrixError):
        ea.inverse_rational(((1, 2), (2, 4)))


@pytest.mark.parametrize("M, d", [
    (((2, 0), (0, 3)), (1, 6)),
    (((2, 1), (0, 2)), (1, 4)),
    (ea.identity(3), (1, 1, 1)),
    (((2, 0), (0, 7)), (1, 14)),
    (((2, 0, 0), (0, 4, 0), (0, 0, 6)), (2, 2, 12)),
])
def test_smith_examples(M, d):
    snf = ea.smith_normal_form(M)
    assert snf.d == d
    assert snf.d == invariant_factors_by_minors(M)
    assert ea.matmul(ea.matmul(snf.U, M), snf.V) == snf.diagonal_matrix()


def test_smith_rejects_singular():
    with pytest.raises(SingularMatrixError):
        ea.smith_normal_form(((1, 2), (2, 4)))


@settings(max_examples=150, deadline=None)
@given(square)
def test_inverse_and_smith_properties(rows):
    M = ea.as_matrix(rows)
    det = ea.determinant(M)
    if det == 0:
        return
    inv = ea.inverse_rational(M)
    assert ea.matmul(M, inv) == ea.identity(len(M))
    adj, d2 = ea.adjugate(M)
    assert d2 == det and ea.matmul(M, adj) == tuple(
        tuple(det * v for v in row) for row in ea.identity(len(M)))
    snf = ea.smith_normal_form(M)
    assert ea.matmul(ea.matmul(snf.U, M), snf.V) == snf.diagonal_matrix()
    assert abs(ea.determinant(snf.U)) == 1 and abs(ea.determinant(snf.V)) == 1
    assert all(v > 0 for v in snf.d)
    assert all(b % a == 0 for a, b in zip(snf.d, snf.d[1:]))
    prod = 1
    for v in snf.d:
        prod *= v
    assert prod == abs(det)
    assert snf.d == invariant_factors_by_minors(M)


def test_floor_ceil_examples():
    F = Fraction
    assert ea.floor_vector((F(5, 2), F(-1, 2))) == (2, -1)
    assert ea.floor_vector((3, -2)) == (3, -2)
    assert ea.ceil_vector((F(-1, 2),)) == (0,)


@given(st.lists(st.fractions(max_denominator=50), max_size=6))
def test_floor_ceil_properties(v):
    fl = ea.floor_vector(v)
    assert all(f <= x < f + 1 for f, x in zip(fl, v))
    assert all(a + b == 0 for a, b in zip(fl, ea.ceil_vector([-x for x in v])))
