"""Dual expansion of the generating function ``prod_k 1/(1 - z_k s^{A_k})``.

A regular vector fixes signs ``eps[j, sigma]``; from them every pair
``(sigma, u)`` with ``u`` in ``Z_mu^{n-m}`` gets an integer shift ``eta[sigma, u]``
whose image ``A_sigma^{-1} A eta`` lies in ``[0, 1]^m``.  Collecting the
expansion at ``s^y`` gives a second formula for ``h(y; z)``, summed over all
bases with ``A_sigma^{-1} y >= 0``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exactalg as ea
from .errors import InconsistencyError, TableSizeError, UnboundedError
from .oracle import h_brute
from .polyalg import LaurentSum, RationalTermSum, monomial_value
from .primal import _admissible, r2
from .structure import QuotientGroup, enumerate_bases, is_bounded, regular_vector

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class ShiftEntry:
    theta: tuple     # one ceiling per position of sigma
    eta: tuple       # length n
    image: tuple     # A_sigma^{-1} A eta, as Fractions


class DualShiftTable:
    """Lazily built, memoized map ``(sigma, u) -> eta[sigma, u]``."""

    def __init__(self, A, bases=None, regular=None, budget=DEFAULT_BUDGET, rng=None):
        self.A = ea.as_matrix(A)
        self.m, self.n = ea.shape(self.A)
        self.bases = enumerate_bases(self.A) if bases is None else list(bases)
        self.regular = regular if regular is not None else regular_vector(self.A, self.bases, rng=rng)
        self.budget = budget
        self._cache = {}
        self._groups = {}

    @property
    def signs(self):
        return self.regular.signs

    def grid_size(self, basis):
        return basis.mu ** (self.n - self.m)

    def _store(self, basis):
        store = self._cache.get(basis.sigma)
        if store is None:
            size = self.grid_size(basis)
            if size > self.budget:
                raise TableSizeError(f"basis {basis.sigma} needs {size} shift vectors "
                                     f"(budget {self.budget})")
            store = self._cache[basis.sigma] = {}
        return store

    def group(self, basis):
        g = self._groups.get(basis.sigma)
        if g is None:
            g = self._groups[basis.sigma] = QuotientGroup(basis)
        return g

    def entry(self, basis, u):
        store = self._store(basis)
        u = tuple(u)
        hit = store.get(u)
        if hit is None:
            hit = store[u] = eta_vector(basis, u, self.signs[basis.sigma])
        return hit

    def build_basis(self, basis):
        for u in itertools.product(range(basis.mu), repeat=len(basis.complement)):
            self.entry(basis, u)
        return self._cache[basis.sigma]

    def entries(self):
        """Every ``(sigma, u, ShiftEntry)`` built so far."""
        for sigma, store in self._cache.items():
            for u, e in store.items():
                yield sigma, u, e


def eta_vector(basis, u, signs):
    """``eta[sigma, u]``: ``u`` off the basis, ``theta`` or ``1 - theta`` on it."""
    n = len(basis.columns)
    img = [0] * basis.m
    for k, uk in zip(basis.complement, u):
        if uk:
            col = basis.column(k)
            for i, v in enumerate(col):
                img[i] += v * uk
    num = basis.numerators(img)          # A_sigma^{-1} A_notsigma u = num / mu
    mu = basis.mu
    theta, eta_s, image = [], [], []
    for p, eps in zip(num, signs):
        t = -((eps * p) // mu)           # ceil(-eps * p / mu)
        theta.append(t)
        e = t if eps == 1 else 1 - t
        eta_s.append(e)
        v = Fraction(p, mu) + e
        if not 0 <= v <= 1:
            raise InconsistencyError(f"shift image {v} outside [0, 1] for sigma={basis.sigma}, u={u}")
        image.append(v)
    eta = [0] * n
    for k, uk in zip(basis.complement, u):
        eta[k] = uk
    for j, e in zip(basis.sigma, eta_s):
        eta[j] = e
    return ShiftEntry(tuple(theta), tuple(eta), tuple(image))


def h_dual(A, y, table=None, prefilter=True):
    """``h(y; z)`` from the dual expansion.

    With ``prefilter`` only grid points ``u`` passing the integrality part of
    the membership test are visited (found through the quotient group); the
    full membership test ``A_sigma^{-1}(y - A eta) in N^m`` is applied to each.
    """
    A = ea.as_matrix(A)
    table = table if table is not None else DualShiftTable(A)
    y = tuple(int(v) for v in y)
    n = table.n
    out = RationalTermSum(n)
    for b in table.bases:
        if any(v < 0 for v in b.numerators(y)):
            continue
        if prefilter:
            table._store(b)
            grid = _admissible(b, table.group(b), y, [b.mu] * len(b.complement))
        else:
            grid = itertools.product(range(b.mu), repeat=len(b.complement))
        num = LaurentSum(n)
        for u in grid:
            e = table.entry(b, u)
            rest = tuple(yi - ai for yi, ai in zip(y, ea.matvec(A, e.eta)))
            q = b.solve_integral(rest)
            if q is None or any(v < 0 for v in q):
                continue
            x = list(e.eta)
            for j, qj in zip(b.sigma, q):
                x[j] += qj
            num._add(tuple(x), 1)
        out.append(num, r2(b, starred=False))
    return out


# -- coefficient-level check of the expansion -------------------------------------------

@dataclass
class ExpansionReport:
    box: int
    z: tuple
    status: dict = field(default_factory=dict)     # y -> (left, right)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches

    def format(self):
        lines = []
        for y in sorted(self.status):
            left, right = self.status[y]
            tag = "ok" if left == right else "MISMATCH"
            lines.append(f"y={list(y)} left={left} right={right} {tag}")
        first = f"first_mismatch={list(self.mismatches[0])}" if self.mismatches else "first_mismatch=none"
        lines.append(first)
        lines.append(f"checked={len(self.status)} mismatches={len(self.mismatches)} "
                     f"result={'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def _box(m, B):
    return itertools.product(range(-B, B + 1), repeat=m)


def _left_side(A, z, B):
    m, n = ea.shape(A)
    if all(v >= 0 for row in A for v in row):
        # truncated product of the geometric series; entries only grow
        series = {(0,) * m: Fraction(1)}
        for k in range(n):
            col = ea.column(A, k)
            nxt = {}
            for y, c in series.items():
                x, yk, w = 0, y, c
                while all(abs(v) <= B for v in yk):
                    nxt[yk] = nxt.get(yk, 0) + w
                    if not any(col):
                        break
                    x += 1
                    yk = tuple(a + b for a, b in zip(yk, col))
                    w = w * z[k]
            series = nxt
        return series
    return {y: h_brute(A, y, z) for y in _box(m, B)}


def _q_range(basis, shift, B):
    # bounding box of A_sigma^{-1}(y - shift) over y in [-B, B]^m, clipped at 0
    out = []
    for row in basis.inv:
        lo = hi = -sum(r * s for r, s in zip(row, shift))
        for r in row:
            lo -= abs(r) * B
            hi += abs(r) * B
        out.append(range(max(0, lo.__ceil__()), hi.__floor__() + 1))
    return out


def _right_side(A, z, B, table):
    right = {}
    for b in table.bases:
        den = Fraction(1)
        for f in r2(b, starred=False):
            den *= f.value(z)
        for u in itertools.product(range(b.mu), repeat=len(b.complement)):
            e = table.entry(b, u)
            shift = ea.matvec(A, e.eta)
            w = monomial_value(z, e.eta) / den
            zs = [z[j] for j in b.sigma]
            for q in itertools.product(*_q_range(b, shift, B)):
                y = tuple(s + v for s, v in zip(shift, ea.matvec(b.A_sigma, q)))
                if all(abs(v) <= B for v in y):
                    right[y] = right.get(y, 0) + w * monomial_value(zs, q)
    return right


def verify_expansion(A, z, box, table=None):
    """Compare both sides of the expansion coefficient by coefficient on a box.

    The left side is the oracle product of geometric series; the right side
    collects, at each exponent ``y``, the terms ``z^eta z_sigma^q / R2(sigma; z)``
    with ``A eta + A_sigma q = y``, ``q >= 0``.
    """
    A = ea.as_matrix(A)
    if not is_bounded(A):
        raise UnboundedError("coefficient check needs a bounded instance")
    z = tuple(Fraction(v) for v in z)
    table = table if table is not None else DualShiftTable(A)
    left = _left_side(A, z, box)
    right = _right_side(A, z, box, table)
    report = ExpansionReport(box, z)
    for y in _box(table.m, box):
        lv = Fraction(left.get(y, 0))
        rv = Fraction(right.get(y, 0))
        report.status[y] = (lv, rv)
        if lv != rv:
            report.mismatches.append(y)
    return report
