"""Brute-force enumeration of the lattice points of ``{x >= 0 : A x = y}``."""

import itertools
from fractions import Fraction

from . import exactalg as ea
from .errors import UnboundedError
from .lp import OPTIMAL, UNBOUNDED, linprog_exact
from .polyalg import LaurentSum, monomial_value
from .structure import enumerate_bases, is_bounded


def coordinate_bounds(A, y):
    """``floor(max x_k)`` over the real polyhedron, per coordinate; ``None`` if empty."""
    n = len(A[0])
    bounds = []
    for k in range(n):
        c = [0] * n
        c[k] = 1
        status, _, value = linprog_exact(A, y, c)
        if status == UNBOUNDED:
            raise UnboundedError(f"x_{k + 1} is unbounded on the polyhedron")
        if status != OPTIMAL:
            return None
        bounds.append(value.__floor__())
    return bounds


def enumerate_points(A, y, check_bounded=True):
    """All ``x in N^n`` with ``A x = y``, in lexicographic order.

    The coordinates outside one fixed basis are scanned over their exact LP
    bounds; the basic coordinates are then solved for and kept when they
    are nonnegative integers.
    """
    A = ea.as_matrix(A)
    y = tuple(int(v) for v in y)
    if check_bounded and not is_bounded(A):
        raise UnboundedError("brute force needs a bounded instance")
    bounds = coordinate_bounds(A, y)
    if bounds is None:
        return []
    basis = min(enumerate_bases(A),
                key=lambda b: _box_size(bounds, b.complement))
    m, n = ea.shape(A)
    points = []
    for u in itertools.product(*(range(bounds[k] + 1) for k in basis.complement)):
        rest = list(y)
        for k, uk in zip(basis.complement, u):
            for i in range(m):
                rest[i] -= A[i][k] * uk
        xs = basis.solve_integral(rest)
        if xs is None or any(v < 0 for v in xs):
            continue
        x = [0] * n
        for k, uk in zip(basis.complement, u):
            x[k] = uk
        for j, v in zip(basis.sigma, xs):
            x[j] = v
        points.append(tuple(x))
    points.sort()
    return points


def _box_size(bounds, idx):
    out = 1
    for k in idx:
        out *= bounds[k] + 1
    return out


def h_brute_symbolic(A, y):
    A = ea.as_matrix(A)
    out = LaurentSum(len(A[0]))
    for x in enumerate_points(A, y):
        out._add(x, 1)
    return out


def h_brute(A, y, z):
    z = tuple(Fraction(v) for v in z)
    return sum((monomial_value(z, x) for x in enumerate_points(A, y)), Fraction(0))


def count_points(A, y):
    return len(enumerate_points(A, y))
