"""Primal Brion decomposition of ``h(y; z)``.

For a basis ``sigma`` the cone ``{x : A x = y, x_notsigma >= 0}`` has the
generating function ``R1(y, sigma; z) / R2(sigma; z)``; summing over the bases
of a chamber whose closure contains ``y`` gives ``h(y; z)``.  The starred
variants use the orders ``nu_{k,sigma}`` in place of ``mu_sigma``.
"""

import json
import random
from dataclasses import dataclass

from . import exactalg as ea
from .errors import InconsistencyError, ParseError, WrongChamberError
from .polyalg import (GeometricFactor, LaurentSum, RationalTermSum, factors_from_json,
                      factors_to_json, laurent_from_json, laurent_to_json)
from .structure import QuotientGroup, chamber_bases, make_basis, nu_order

TABLE_FORMAT_VERSION = 1


def _sigma_label(basis, k=None):
    s = "{" + ",".join(str(i + 1) for i in basis.sigma) + "}"
    return f"sigma={s}" if k is None else f"sigma={s}, k={k + 1}"


def factor_exponent(basis, k, power):
    """Exponent vector of ``(z_k z_sigma^{-A_sigma^{-1} A_k})^power``."""
    n = len(basis.columns)
    p = basis.numerators(basis.column(k))
    exp = [0] * n
    exp[k] = power
    for j, pj in zip(basis.sigma, p):
        q, r = divmod(-pj * power, basis.mu)
        if r:
            raise InconsistencyError(f"non-integral exponent in R2 for {_sigma_label(basis, k)}")
        exp[j] = q
    return tuple(exp)


def r2(basis, starred=True):
    """Denominator factors ``1 - (z_k z_sigma^{-A_sigma^{-1} A_k})^e`` for ``k`` off the basis."""
    return tuple(GeometricFactor(factor_exponent(basis, k, nu_order(basis, k) if starred else basis.mu),
                                 1, _sigma_label(basis, k))
                 for k in basis.complement)


def _admissible(basis, group, y, ranges):
    """Yield the ``u`` in the box ``prod range(r)`` with ``delta(y - A_notsigma u) == 1``.

    The residue of ``A_notsigma u`` is updated additively; the last coordinate
    is looked up from a residue table instead of being scanned.
    """
    comp = basis.complement
    target = group.hhat(y)
    if not comp:
        if not any(target):
            yield ()
        return
    gens = [group.hhat(basis.column(k)) for k in comp]
    last = {}
    for u in range(ranges[-1]):
        last.setdefault(group.scale(gens[-1], u), []).append(u)
    head = len(comp) - 1
    zero = (0,) * group.s

    def rec(i, prefix, residue):
        if i == head:
            need = tuple((t - r) % d for t, r, d in zip(target, residue, group.type_vector))
            for u in last.get(need, ()):
                yield prefix + (u,)
            return
        r = residue
        for u in range(ranges[i]):
            yield from rec(i + 1, prefix + (u,), r)
            r = group.add(r, gens[i])

    yield from rec(0, (), zero)


def cone_point(basis, y, u):
    """The integer point ``x`` with ``x_notsigma = u`` and ``A x = y``."""
    n = len(basis.columns)
    rhs = list(y)
    for k, uk in zip(basis.complement, u):
        if uk:
            col = basis.column(k)
            for i in range(len(rhs)):
                rhs[i] -= col[i] * uk
    xs = basis.solve_integral(rhs)
    if xs is None:
        raise InconsistencyError(f"residue filter admitted a non-integral point for {_sigma_label(basis)}")
    x = [0] * n
    for k, uk in zip(basis.complement, u):
        x[k] = uk
    for j, v in zip(basis.sigma, xs):
        x[j] = v
    return tuple(x)


def r1(y, basis, starred=True, group=None):
    """Numerator ``R1(y, sigma; z)`` (or ``R1*`` when ``starred``) as a Laurent sum."""
    group = group if group is not None else QuotientGroup(basis)
    y = tuple(int(v) for v in y)
    if starred:
        ranges = [nu_order(basis, k) for k in basis.complement]
    else:
        ranges = [basis.mu] * len(basis.complement)
    n = len(basis.columns)
    out = LaurentSum(n)
    for u in _admissible(basis, group, y, ranges):
        out._add(cone_point(basis, y, u), 1)
    return out


def h_primal(A, y, starred=True, bases=None, chamber=None, groups=None, rng=None):
    """``h(y; z)`` as a sum of ``R1/R2`` over the chamber bases of ``y``."""
    A = ea.as_matrix(A)
    n = len(A[0])
    if chamber is None:
        chamber = chamber_bases(A, y, bases=bases, rng=rng)
    out = RationalTermSum(n)
    for b in chamber.bases:
        g = groups.get(b.sigma) if groups else None
        out.append(r1(y, b, starred, g), r2(b, starred))
    return out


def minimal_representative(y, basis):
    """``(xi, floor)`` with ``floor = floor(A_sigma^{-1} y)`` and ``xi = y - A_sigma floor``."""
    fl = ea.floor_vector(basis.solve(y))
    xi = tuple(yi - v for yi, v in zip(y, ea.matvec(basis.A_sigma, fl)))
    return xi, fl


@dataclass
class TableBasis:
    basis: object
    group: object
    xi: list        # xi[j] for class index j
    r1: list        # stored R1(xi[j], sigma; z)
    r2: tuple


@dataclass
class ChamberTable:
    """Per-chamber store of ``R1(xi[j, sigma], sigma; z)`` for every class ``j``."""

    A: tuple
    y: tuple
    entries: list
    starred: bool = True

    @property
    def bases(self):
        return [e.basis for e in self.entries]

    def to_json(self):
        doc = {
            "format": "latcount.chamber_table",
            "version": TABLE_FORMAT_VERSION,
            "A": [list(r) for r in self.A],
            "y": list(self.y),
            "starred": self.starred,
            "bases": [{
                "sigma": [i + 1 for i in e.basis.sigma],
                "mu": e.basis.mu,
                "type": list(e.group.type_vector),
                "classes": [{"j": j, "xi": list(xi), "r1": laurent_to_json(num)}
                            for j, (xi, num) in enumerate(zip(e.xi, e.r1))],
                "r2": factors_to_json(e.r2),
            } for e in self.entries],
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid table JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if doc.get("format") != "latcount.chamber_table" or doc.get("version") != TABLE_FORMAT_VERSION:
            raise ParseError("not a version-1 chamber table document")
        A = ea.as_matrix(doc["A"])
        n = len(A[0])
        entries = []
        for item in doc["bases"]:
            b = make_basis(A, [i - 1 for i in item["sigma"]])
            if b.mu != item["mu"]:
                raise ParseError(f"stored mu {item['mu']} does not match the matrix")
            g = QuotientGroup(b)
            classes = sorted(item["classes"], key=lambda c: c["j"])
            entries.append(TableBasis(b, g, [tuple(c["xi"]) for c in classes],
                                      [laurent_from_json(c["r1"], n) for c in classes],
                                      factors_from_json(item["r2"])))
        return cls(A, tuple(doc["y"]), entries, bool(doc["starred"]))


def build_chamber_table(A, y=None, chamber=None, starred=True, rng=None):
    """Precompute the numerators of every class for the chamber of ``y``."""
    A = ea.as_matrix(A)
    if chamber is None:
        chamber = chamber_bases(A, y, rng=rng if rng is not None else random.Random(0))
    entries = []
    for b in chamber.bases:
        g = QuotientGroup(b)
        xis, nums = [], []
        for j in range(b.mu):
            d = g.representative(j)
            xi, _ = minimal_representative(d, b)
            if g.index(g.hhat(xi)) != j:
                raise InconsistencyError("class representative landed in the wrong class")
            xis.append(xi)
            nums.append(r1(xi, b, starred, g))
        entries.append(TableBasis(b, g, xis, nums, r2(b, starred)))
    return ChamberTable(A, chamber.y, entries, starred)


def h_from_table(table, y):
    """``h(y; z)`` from stored numerators: ``R1(xi) z_sigma^floor(A_sigma^{-1} y) / R2``."""
    y = tuple(int(v) for v in y)
    n = len(table.A[0])
    out = RationalTermSum(n)
    for e in table.entries:
        b = e.basis
        if any(v < 0 for v in b.numerators(y)):
            raise WrongChamberError(f"y={list(y)} is outside the chamber of the table "
                                    f"({_sigma_label(b)} has a negative coordinate)")
        xi, fl = minimal_representative(y, b)
        j = e.group.index(e.group.hhat(y))
        if e.xi[j] != xi:
            raise InconsistencyError(f"stored representative {e.xi[j]} differs from {xi}")
        shift = [0] * n
        for pos, q in zip(b.sigma, fl):
            shift[pos] = q
        out.append(e.r1[j].shift(shift), e.r2)
    return out

