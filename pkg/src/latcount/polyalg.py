"""Sparse Laurent polynomials and sums of rational terms.

A :class:`RationalTermSum` is a finite sum of terms

    numerator(z) / prod_i (1 - z^b_i)^mult_i

with every ``numerator`` a :class:`LaurentSum` and every ``b_i`` an integer
exponent vector.  Counting lattice points means taking the value of such a
sum at ``z = (1, ..., 1)``, which is a removable singularity; it is reached by
specializing ``z_k = t^c_k`` along a generic integer direction ``c`` and
taking the exact limit ``t -> 1``.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateDirectionError, DomainError, InconsistencyError, PoleError


def _fmt(q):
    return str(Fraction(q))


def _dot(c, e):
    return sum(a * b for a, b in zip(c, e))


def monomial_value(z, exponent):
    out = Fraction(1)
    for zk, e in zip(z, exponent):
        if e:
            out *= zk ** e
    return out


class LaurentSum:
    """Finite sum of rational multiples of Laurent monomials ``z^e``."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self._terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coef in items:
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have {nvars} entries")
                self._add(exp, Fraction(coef))

    def _add(self, exp, coef):
        new = self._terms.get(exp, 0) + coef
        if new:
            self._terms[exp] = new
        else:
            self._terms.pop(exp, None)

    @classmethod
    def monomial(cls, exponent, coef=1):
        return cls(len(exponent), {tuple(exponent): coef})

    @classmethod
    def one(cls, nvars):
        return cls.monomial((0,) * nvars)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentSum):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other):
        out = LaurentSum(self.nvars, self._terms)
        for exp, coef in other._terms.items():
            out._add(exp, coef)
        return out

    def __neg__(self):
        return LaurentSum(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSum):
            other = Fraction(other)
            return LaurentSum(self.nvars, {e: c * other for e, c in self._terms.items()})
        out = LaurentSum(self.nvars)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out._add(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return out

    __rmul__ = __mul__

    def shift(self, exponent):
        """Multiply by the monomial ``z^exponent``."""
        return LaurentSum(self.nvars, {tuple(a + b for a, b in zip(e, exponent)): c
                                       for e, c in self._terms.items()})

    def evaluate(self, z):
        # z^e = p^lo q^-hi * p^(e - lo) q^(hi - e); the second factor is an integer
        if not self._terms:
            return Fraction(0)
        z = [Fraction(v) for v in z]
        scale = Fraction(1)
        powers = []
        for k, zk in enumerate(z):
            p, q = zk.numerator, zk.denominator
            col = {e[k] for e in self._terms}
            lo, hi = min(col), max(col)
            powers.append({e: p ** (e - lo) * q ** (hi - e) for e in col})
            scale *= Fraction(p) ** lo / Fraction(q) ** hi
        total = 0
        for e, c in self._terms.items():
            for k, ek in enumerate(e):
                c *= powers[k][ek]
            total += c
        return total * scale

    def __repr__(self):
        return f"LaurentSum({self.nvars}, {dict(self.items())!r})"


@dataclass(frozen=True)
class GeometricFactor:
    """The denominator factor ``(1 - z^exponent)^multiplicity``."""

    exponent: tuple
    multiplicity: int = 1
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not any(self.exponent):
            raise ValueError("geometric factor needs a nonzero exponent vector")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def value(self, z):
        return (1 - monomial_value(z, self.exponent)) ** self.multiplicity


@dataclass(frozen=True)
class RationalTerm:
    numerator: LaurentSum
    denominator: tuple = ()

    def evaluate(self, z):
        den = Fraction(1)
        for f in self.denominator:
            v = f.value(z)
            if v == 0:
                where = f" ({f.label})" if f.label else ""
                raise PoleError(f"factor 1 - z^{list(f.exponent)}{where} vanishes at z")
            den *= v
        return self.numerator.evaluate(z) / den


class RationalTermSum:
    """Finite sum of :class:`RationalTerm` over ``nvars`` variables."""

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        self.terms = list(terms)

    def append(self, numerator, denominator=()):
        if numerator:
            self.terms.append(RationalTerm(numerator, tuple(denominator)))

    def __add__(self, other):
        return RationalTermSum(self.nvars, self.terms + other.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"RationalTermSum({self.nvars}, {len(self.terms)} terms)"


def evaluate_at(expr, z):
    """Exact value of a :class:`RationalTermSum` (or :class:`LaurentSum`) at ``z``."""
    z = tuple(Fraction(v) for v in z)
    if any(v == 0 for v in z):
        raise DomainError("every z_k must be nonzero")
    if isinstance(expr, LaurentSum):
        return expr.evaluate(z)
    return sum((term.evaluate(z) for term in expr.terms), Fraction(0))


# -- univariate specialization ------------------------------------------------

@dataclass
class UnivariateRational:
    """``numerator(t) / prod_d (1 - t^d)^denominator[d]`` with every ``d > 0``.

    ``numerator`` maps (possibly negative) exponents to rational coefficients.
    """

    numerator: dict
    denominator: dict = field(default_factory=dict)

    def evaluate(self, t):
        t = Fraction(t)
        num = sum((c * t ** e for e, c in self.numerator.items()), Fraction(0))
        den = Fraction(1)
        for d, k in self.denominator.items():
            den *= (1 - t ** d) ** k
        if den == 0:
            raise PoleError(f"denominator vanishes at t = {t}")
        return num / den

    @property
    def pole_order(self):
        return sum(self.denominator.values())


def specialize_univariate(expr, c):
    """Substitute ``z_k = t^c_k`` term by term.

    A factor with ``<c, b> = -d < 0`` is rewritten with
    ``1/(1 - t^-d) = -t^d/(1 - t^d)`` so all denominator exponents are
    positive.  Returns one :class:`UnivariateRational` per term.
    """
    out = []
    for term in expr.terms:
        sign = 1
        offset = 0
        den = {}
        for f in term.denominator:
            d = _dot(c, f.exponent)
            if d == 0:
                raise DegenerateDirectionError(
                    f"direction {list(c)} is orthogonal to factor exponent {list(f.exponent)}")
            if d < 0:
                d = -d
                sign *= (-1) ** f.multiplicity
                offset += d * f.multiplicity
            den[d] = den.get(d, 0) + f.multiplicity
        num = {}
        for e, coef in term.numerator.terms.items():
            k = _dot(c, e) + offset
            v = num.get(k, 0) + sign * coef
            if v:
                num[k] = v
            else:
                num.pop(k, None)
        out.append(UnivariateRational(num, den))
    return out


def _binom(a, i):
    # generalized binomial coefficient, valid for negative a
    out = Fraction(1)
    for j in range(i):
        out = out * (a - j) / (j + 1)
    return out


def _series_inverse(s, order):
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / Fraction(s[0])
    for k in range(1, order + 1):
        acc = sum((s[j] * inv[k - j] for j in range(1, min(k, len(s) - 1) + 1)), Fraction(0))
        inv[k] = -acc * inv[0]
    return inv


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j in range(order + 1 - i):
                if j < len(b):
                    out[i + j] += x * b[j]
    return out


def laurent_expansion_at_one(term, order=0):
    """Coefficients of ``term`` in powers of ``e = t - 1``.

    Returns a dict ``power -> coefficient`` covering powers from
    ``-pole_order`` up to ``order``.
    """
    p = term.pole_order
    top = p + order
    num = [Fraction(0)] * (top + 1)
    for a, coef in term.numerator.items():
        for i in range(top + 1):
            num[i] += coef * _binom(a, i)
    series = num
    for d, k in term.denominator.items():
        # 1 - (1 + e)^d = -e * (d + C(d,2) e + ...)
        s = [Fraction(_binom(d, i + 1)) for i in range(top + 1)]
        inv = _series_inverse(s, top)
        for _ in range(k):
            series = _series_mul(series, [-v for v in inv], top)
    return {i - p: v for i, v in enumerate(series)}


def _as_terms(expr):
    if isinstance(expr, UnivariateRational):
        return [expr]
    return list(expr)


def limit_at_one(expr, method="series"):
    """Exact value at ``t = 1`` of a sum of univariate terms.

    The sum must be a Laurent polynomial in ``t``.  With ``method="series"``
    each term is expanded around ``t = 1`` and the pole parts must cancel;
    with ``method="division"`` the terms are pooled over a common
    denominator and divided exactly.  Either way a failure of the
    polynomial property raises :class:`InconsistencyError`.
    """
    terms = _as_terms(expr)
    if method == "division":
        quotient = divide_exact(*pooled_fraction(terms))
        return sum(quotient.values(), Fraction(0))
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    total = {}
    for term in terms:
        for power, v in laurent_expansion_at_one(term).items():
            total[power] = total.get(power, 0) + v
    residual = {k: v for k, v in total.items() if k < 0 and v != 0}
    if residual:
        raise InconsistencyError(
            f"pole at t = 1 does not cancel (orders {sorted(residual)}); "
            "the polyhedron is unbounded or the sum is wrong")
    return Fraction(total.get(0, 0))


def _poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def pooled_fraction(terms):
    """Put univariate terms over the common denominator ``prod_d (1 - t^d)^k_d``."""
    common = {}
    for term in terms:
        for d, k in term.denominator.items():
            common[d] = max(common.get(d, 0), k)
    num = {}
    for term in terms:
        part = dict(term.numerator)
        for d, k in common.items():
            for _ in range(k - term.denominator.get(d, 0)):
                part = _poly_mul(part, {0: 1, d: -1})
        for e, c in part.items():
            num[e] = num.get(e, 0) + c
    num = {e: Fraction(c) for e, c in num.items() if c}
    return num, common


def divide_exact(numerator, denominator):
    """Divide a Laurent polynomial by ``prod_d (1 - t^d)^k_d`` exactly.

    ``denominator`` is a ``{d: k}`` map.  Returns the quotient as a
    ``{exponent: coefficient}`` map; a nonzero remainder raises
    :class:`InconsistencyError`.
    """
    den = {0: Fraction(1)}
    for d, k in denominator.items():
        for _ in range(k):
            den = _poly_mul(den, {0: 1, d: -1})
    if not numerator:
        return {}
    shift = min(numerator)
    rem = {e - shift: Fraction(c) for e, c in numerator.items()}
    deg_d = max(den)
    lead = den[deg_d]
    quot = {}
    while rem and max(rem) >= deg_d:
        top = max(rem)
        q = rem[top] / lead
        quot[top - deg_d] = q
        for e, c in den.items():
            k = top - deg_d + e
            v = rem.get(k, 0) - q * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if rem:
        raise InconsistencyError("pooled numerator is not divisible by the denominator")
    return {e + shift: c for e, c in quot.items()}


# -- counting -------------------------------------------------------------------

DIRECTION_RANGE = 997
DIRECTION_RETRIES = 32


def generic_direction(expr, rng=None, retries=DIRECTION_RETRIES):
    """Draw ``c`` in ``[1, 997]^n`` with ``<c, b> != 0`` for every factor ``b``."""
    rng = rng if rng is not None else random.Random(0)
    exps = {f.exponent for term in expr.terms for f in term.denominator}
    for _ in range(retries):
        c = tuple(rng.randint(1, DIRECTION_RANGE) for _ in range(expr.nvars))
        if all(_dot(c, b) != 0 for b in exps):
            return c
    raise DegenerateDirectionError(f"no admissible direction after {retries} draws")


def count_at_one(expr, rng=None, method="series", direction=None):
    """Value of ``expr`` at ``z = 1`` (the lattice-point count for compact problems)."""
    if not expr.terms:
        return 0
    c = direction if direction is not None else generic_direction(expr, rng)
    value = limit_at_one(specialize_univariate(expr, c), method=method)
    if value.denominator != 1:
        raise InconsistencyError(f"limit at t = 1 is not an integer: {value}")
    return int(value)


# -- serialization ------------------------------------------------------------------

def format_terms(expr):
    """One line per (monomial, denominator) pair.

    Line format: ``coef * z^[e1,...,en] / (1 - z^[b1,...,bn])^mult * ...``;
    an empty denominator prints as ``1``.  Coefficients use ``str`` of a
    ``Fraction``, i.e. ``p/q`` or a bare integer.
    """
    lines = []
    for term in expr.terms:
        den = " * ".join(f"(1 - z^[{','.join(map(str, f.exponent))}])^{f.multiplicity}"
                         for f in term.denominator) or "1"
        for exp, coef in term.numerator.items():
            lines.append(f"{_fmt(coef)} * z^[{','.join(map(str, exp))}] / {den}")
    return lines


def laurent_to_json(ls):
    return [{"coef": _fmt(c), "exp": list(e)} for e, c in ls.items()]


def laurent_from_json(items, nvars):
    return LaurentSum(nvars, [(tuple(it["exp"]), Fraction(it["coef"])) for it in items])


def factors_to_json(factors):
    return [{"exp": list(f.exponent), "mult": f.multiplicity} for f in factors]


def factors_from_json(items):
    return tuple(GeometricFactor(tuple(it["exp"]), int(it["mult"])) for it in items)


def sum_to_json(expr):
    return [{"numerator": laurent_to_json(t.numerator),
             "denominator": factors_to_json(t.denominator)} for t in expr.terms]


def sum_from_json(items, nvars):
    return RationalTermSum(nvars, [RationalTerm(laurent_from_json(t["numerator"], nvars),
                                                factors_from_json(t["denominator"]))
                                   for t in items])
