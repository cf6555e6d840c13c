"""Bases, quotient groups, chambers, boundedness and regular vectors.

Column indices are 0-based throughout the library; the CLI and the JSON
formats present them 1-based.
"""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from . import exactalg as ea
from .errors import DomainError, RankError, RegularitySearchError
from .lp import OPTIMAL, linprog_exact


@dataclass(frozen=True)
class Basis:
    """An invertible ``m x m`` column submatrix of ``A``.

    ``A_sigma^{-1} v`` is kept as ``adj @ v / mu`` where ``adj`` is the
    adjugate scaled by the sign of the determinant, so the integrality of a
    solve is an exact divisibility test.
    """

    sigma: tuple
    complement: tuple
    A_sigma: tuple
    det: int
    adj: tuple
    columns: tuple = field(repr=False)

    @property
    def mu(self):
        return abs(self.det)

    @property
    def m(self):
        return len(self.sigma)

    @cached_property
    def inv(self):
        return tuple(tuple(Fraction(v, self.mu) for v in row) for row in self.adj)

    def numerators(self, v):
        """Integers ``p`` with ``A_sigma^{-1} v == p / mu``."""
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.adj)

    def solve(self, v):
        return tuple(Fraction(p, self.mu) for p in self.numerators(v))

    def solve_integral(self, v):
        """``A_sigma^{-1} v`` as an integer tuple, or ``None`` if not integral."""
        mu = self.mu
        out = []
        for p in self.numerators(v):
            q, r = divmod(p, mu)
            if r:
                return None
            out.append(q)
        return tuple(out)

    def column(self, k):
        return self.columns[k]


def make_basis(A, sigma):
    sigma = tuple(sorted(sigma))
    n = len(A[0])
    As = ea.columns(A, sigma)
    adj, det = ea.adjugate(As)
    if det < 0:
        adj = tuple(tuple(-v for v in row) for row in adj)
    comp = tuple(k for k in range(n) if k not in sigma)
    cols = tuple(ea.column(A, k) for k in range(n))
    return Basis(sigma, comp, As, det, adj, cols)


def rank(A):
    rows = [[Fraction(v) for v in row] for row in A]
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def enumerate_bases(A):
    """All bases of ``A`` in lexicographic order of their index sets."""
    A = ea.as_matrix(A)
    m, n = ea.shape(A)
    if n < m or rank(A) < m:
        raise RankError(f"matrix of shape {m}x{n} does not have full row rank")
    out = []
    for sigma in itertools.combinations(range(n), m):
        if ea.determinant(ea.columns(A, sigma)) != 0:
            out.append(make_basis(A, sigma))
    return out


# -- quotient groups ------------------------------------------------------------

def element_order(modulus, residue):
    """Order of ``residue`` in ``Z^s mod modulus``."""
    out = 1
    for d, r in zip(modulus, residue):
        out = lcm(out, d // gcd(d, r % d))
    return out


class QuotientGroup:
    """``Z^m / A_sigma Z^m`` realized through the Smith form ``U A_sigma V = D``.

    ``y`` and ``y'`` lie in the same class iff ``U y == U y' mod D``; only the
    invariant factors larger than one are kept.
    """

    def __init__(self, basis):
        self.basis = basis
        self.snf = ea.smith_normal_form(basis.A_sigma)
        keep = [i for i, d in enumerate(self.snf.d) if d > 1]
        self.type_vector = tuple(self.snf.d[i] for i in keep)
        self.projector = tuple(self.snf.U[i] for i in keep)
        self._keep = keep

    @property
    def s(self):
        return len(self.type_vector)

    @property
    def order(self):
        out = 1
        for d in self.type_vector:
            out *= d
        return out

    def hhat(self, y):
        return tuple(sum(a * b for a, b in zip(row, y)) % d
                     for row, d in zip(self.projector, self.type_vector))

    def hhat_matrix(self, B):
        """Column-wise ``hhat`` of the columns of ``B``."""
        return tuple(self.hhat(col) for col in ea.transpose(B))

    def add(self, r1, r2):
        return tuple((a + b) % d for a, b, d in zip(r1, r2, self.type_vector))

    def scale(self, r, k):
        return tuple((a * k) % d for a, d in zip(r, self.type_vector))

    def element_order(self, r):
        return element_order(self.type_vector, r)

    def index(self, residue):
        """Mixed-radix index of a residue, in ``range(order)``."""
        j = 0
        for r, d in zip(residue, self.type_vector):
            j = j * d + r
        return j

    def residue(self, index):
        out = []
        for d in reversed(self.type_vector):
            index, r = divmod(index, d)
            out.append(r)
        return tuple(reversed(out))

    @cached_property
    def _U_inv(self):
        adj, det = ea.adjugate(self.snf.U)
        return tuple(tuple(v * det for v in row) for row in adj)  # det is +-1

    def representative(self, index):
        """Some integer vector of the class with the given index."""
        m = self.basis.m
        full = [0] * m
        for pos, r in zip(self._keep, self.residue(index)):
            full[pos] = r
        return ea.matvec(self._U_inv, full)


def delta(basis, y):
    """1 when ``A_sigma^{-1} y`` is integral, else 0."""
    return int(basis.solve_integral(y) is not None)


def nu_order(basis, k):
    """Least ``nu > 0`` with ``nu * A_sigma^{-1} A_k`` integral."""
    if k in basis.sigma:
        raise IndexError(f"column {k} belongs to the basis {basis.sigma}")
    p = basis.numerators(basis.column(k))
    return basis.mu // gcd(basis.mu, ea.gcd_all(p))


# -- chambers ------------------------------------------------------------------------

@dataclass(frozen=True)
class ChamberBasisSet:
    y: tuple
    bases: tuple
    perturbation: tuple


def _lex_positive(seq):
    for v in seq:
        if v:
            return v > 0
    return False


def in_cone(bases, y):
    return any(all(v >= 0 for v in b.numerators(y)) for b in bases)


def perturbation_vectors(A, rng=None):
    """Linearly independent integer vectors in the interior of the column cone.

    The first is the sum of the columns, the others random positive
    combinations of the columns.
    """
    A = ea.as_matrix(A)
    m, n = ea.shape(A)
    rng = rng if rng is not None else random.Random(0)
    cols = [ea.column(A, k) for k in range(n)]
    gs = [tuple(map(sum, zip(*cols)))]
    while len(gs) < m:
        w = [rng.randint(1, 1000) for _ in range(n)]
        g = tuple(sum(wk * c[i] for wk, c in zip(w, cols)) for i in range(m))
        if rank(gs + [g]) == len(gs) + 1:
            gs.append(g)
    return tuple(gs)


def chamber_bases(A, y, bases=None, perturbation=None, rng=None):
    """The bases ``B(J_A, gamma)`` of a chamber whose closure contains ``y``.

    ``gamma`` is the chamber containing ``y + t g_1 + t^2 g_2 + ...`` for small
    ``t > 0``: a basis is kept iff, per coordinate, the first nonzero entry
    of ``A_sigma^{-1} y, A_sigma^{-1} g_1, ...`` is positive.  ``y`` outside the
    column cone gives an empty set.
    """
    bases = enumerate_bases(A) if bases is None else bases
    y = tuple(int(v) for v in y)
    if not in_cone(bases, y):
        return ChamberBasisSet(y, (), ())
    gs = perturbation if perturbation is not None else perturbation_vectors(A, rng)
    chosen = []
    for b in bases:
        rows = [b.numerators(y)] + [b.numerators(g) for g in gs]
        if all(_lex_positive(col) for col in zip(*rows)):
            chosen.append(b)
    return ChamberBasisSet(y, tuple(chosen), tuple(gs))


# -- boundedness and regular vectors ------------------------------------------------

def recession_certificate(A):
    """A nonzero ``x >= 0`` with ``A x = 0`` (normalized to sum 1), or ``None``."""
    A = ea.as_matrix(A)
    m, n = ea.shape(A)
    rows = [list(row) for row in A] + [[1] * n]
    status, x, _ = linprog_exact(rows, [0] * m + [1])
    return x if status == OPTIMAL else None


def is_bounded(A):
    """True iff ``{x >= 0 : A x = 0} = {0}``, i.e. every ``Omega(y)`` is compact."""
    return recession_certificate(A) is None


@dataclass(frozen=True)
class RegularVector:
    xhat: tuple
    signs: dict = field(hash=False)  # sigma -> tuple of +1/-1
    attempts: int = 1


def regular_vector(A, bases=None, rng=None, attempts=64, start=None):
    """A nonnegative integer ``xhat`` with no vanishing ``[A_sigma^{-1} A xhat]_j``.

    Tries ``start`` (all ones by default) first, then random vectors in
    ``[1, 10^6]^n``.
    """
    A = ea.as_matrix(A)
    m, n = ea.shape(A)
    bases = enumerate_bases(A) if bases is None else bases
    rng = rng if rng is not None else random.Random(0)
    candidate = tuple(start) if start is not None else (1,) * n
    for attempt in range(1, attempts + 1):
        if any(v < 0 for v in candidate):
            raise DomainError("regular vector must be nonnegative")
        Ax = ea.matvec(A, candidate)
        signs = {}
        for b in bases:
            vals = b.numerators(Ax)
            if any(v == 0 for v in vals):
                break
            signs[b.sigma] = tuple(1 if v > 0 else -1 for v in vals)
        else:
            return RegularVector(candidate, signs, attempt)
        candidate = tuple(rng.randint(1, 10 ** 6) for _ in range(n))
    raise RegularitySearchError(attempts)
