from fractions import Fraction

from latcount import structure as st
from latcount.errors import PoleError
from latcount.polyalg import evaluate_at


def random_instance(rng, ms=(1, 2, 3), extra=3, lo=0, hi=4, max_grid=None):
    """Random full-rank bounded ``A`` with ``m`` in ``ms`` and ``n <= m + extra``."""
    while True:
        m = rng.choice(ms)
        n = rng.randint(m, m + extra)
        A = tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(m))
        if st.rank(A) < m or not st.is_bounded(A):
            continue
        if max_grid is not None:
            if sum(b.mu ** (n - m) for b in st.enumerate_bases(A)) > max_grid:
                continue
        return A


def random_in_cone(rng, A, bases=None, bound=12, lo=-2):
    bases = st.enumerate_bases(A) if bases is None else bases
    while True:
        y = tuple(rng.randint(lo, bound) for _ in range(len(A)))
        if st.in_cone(bases, y):
            return y


def random_z(rng, n):
    return tuple(Fraction(rng.randint(1, 9), rng.randint(2, 11)) * rng.choice((1, -1, 1))
                 for _ in range(n))


def values_at_random_z(rng, exprs, n, count):
    """Evaluate every expression at ``count`` random points avoiding poles."""
    out = []
    while len(out) < count:
        z = random_z(rng, n)
        try:
            out.append(tuple(evaluate_at(e, z) for e in exprs))
        except PoleError:
            continue
    return out


