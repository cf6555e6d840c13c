"""Acceptance checks; each test carries a ``criterion`` mark and the
conftest prints one PASS/FAIL line per criterion after the run."""

import random
import time
from fractions import Fraction as F

import pytest

from helpers import random_in_cone, random_instance, values_at_random_z
from latcount import exactalg as ea
from latcount import structure as st
from latcount.dual import DualShiftTable, h_dual, verify_expansion
from latcount.oracle import count_points
from latcount.polyalg import RationalTermSum, count_at_one, evaluate_at
from latcount.primal import build_chamber_table, h_from_table, h_primal, minimal_representative, r1, r2

SEED = 20261014
N_INSTANCES = 200
criterion = pytest.mark.criterion


class Case:
    def __init__(self, A, y, bases):
        self.A, self.y, self.bases = A, y, bases
        self.m, self.n = ea.shape(A)


@pytest.fixture(scope="module")
def cases():
    rng = random.Random(SEED)
    out = []
    for _ in range(N_INSTANCES):
        A = random_instance(rng, ms=(1, 2, 3), extra=3, lo=0, hi=4)
        bases = st.enumerate_bases(A)
        out.append(Case(A, random_in_cone(rng, A, bases, bound=12), bases))
    return out


@pytest.fixture(scope="module")
def truth(cases):
    return [count_points(c.A, c.y) for c in cases]


@pytest.fixture(scope="module")
def dual_run(cases):
    """Dual counts for every case; the shift tables keep every eta they built."""
    rng = random.Random(SEED + 2)
    tables, counts = [], []
    for c in cases:
        t = DualShiftTable(c.A, c.bases, rng=rng)
        counts.append(count_at_one(h_dual(c.A, c.y, t), rng))
        tables.append(t)
    return tables, counts


@criterion(1, "primal count equals brute force on 200 random instances, under 120 s")
def test_primal_oracle_equivalence(cases):
    rng = random.Random(SEED + 1)
    start = time.perf_counter()
    bad = []
    for c in cases:
        want = count_points(c.A, c.y)
        got = count_at_one(h_primal(c.A, c.y, bases=c.bases, rng=rng), rng)
        if got != want:
            bad.append((c.A, c.y, got, want))
    elapsed = time.perf_counter() - start
    assert len(cases) >= 200
    assert not bad, bad[:3]
    assert elapsed < 120, elapsed


@criterion(2, "dual count equals brute force on the same instances")
def test_dual_oracle_equivalence(cases, truth, dual_run):
    bad = []
    for c, want, got in zip(cases, truth, dual_run[1]):
        if got != want:
            bad.append((c.A, c.y, got, want))
    assert not bad, bad[:3]


@criterion(3, "R1/R2 equals R1*/R2* at 5 random rational z per (instance, sigma, y)")
def test_starred_equals_full(cases):
    rng = random.Random(SEED + 4)
    checked = 0
    for c in cases:
        for b in st.chamber_bases(c.A, c.y, bases=c.bases, rng=rng).bases:
            full = RationalTermSum(c.n, [])
            full.append(r1(c.y, b, starred=False), r2(b, starred=False))
            star = RationalTermSum(c.n, [])
            star.append(r1(c.y, b, starred=True), r2(b, starred=True))
            for a, s in values_at_random_z(rng, [full, star], c.n, 5):
                assert a == s, (c.A, b.sigma, c.y)
                checked += 1
    assert checked >= 5 * len(cases)


def _table_points(rng, c, chamber, count=10):
    """``count`` distinct right-hand sides in the closure of ``chamber``."""
    inside = lambda y: all(all(v >= 0 for v in b.numerators(y)) for b in chamber.bases)
    pts = []
    for _ in range(4000):
        if len(pts) == count:
            return pts
        x = [rng.randint(0, 3) for _ in range(c.n)]
        a = rng.randint(0, 3)
        y = tuple(a * v + w for v, w in zip(c.y, ea.matvec(c.A, x)))
        if inside(y) and y not in pts:
            pts.append(y)
    # the closure is a cone, so multiples of a nonzero member stay inside
    seed = next((y for y in pts if any(y)), None)
    N = 2
    while seed is None:
        # y + N^-1 g_1 + N^-2 g_2 + ... lies in the chamber for N large enough
        y = tuple(N ** c.m * v for v in c.y)
        for i, g in enumerate(chamber.perturbation):
            y = tuple(a + N ** (c.m - 1 - i) * b for a, b in zip(y, g))
        seed = y if inside(y) else None
        N += 1
    k = 2
    while len(pts) < count:
        y = tuple(k * v for v in seed)
        if y not in pts:
            pts.append(y)
        k += 1
    return pts


@criterion(4, "chamber table agrees with h_primal at 3 random z for 10 y = xi + A_sigma q")
def test_table_equals_primal(cases):
    rng = random.Random(SEED + 5)
    for c in cases:
        chamber = st.chamber_bases(c.A, c.y, bases=c.bases, rng=rng)
        assert chamber.bases
        table = build_chamber_table(c.A, chamber=chamber)
        b0 = chamber.bases[0]
        for y in _table_points(rng, c, chamber):
            # every such y is xi + A_sigma q with q = floor(A_sigma^{-1} y) >= 0
            xi, q = minimal_representative(y, b0)
            assert min(q) >= 0
            assert y == tuple(a + s for a, s in zip(xi, ea.matvec(b0.A_sigma, q)))
            direct = h_primal(c.A, y, chamber=chamber)
            via = h_from_table(table, y)
            for a, s in values_at_random_z(rng, [direct, via], c.n, 3):
                assert a == s, (c.A, y)


@criterion(5, "r1(y + A_sigma q) = r1(y) z_sigma^q for 20 random (y, q) per instance")
def test_quasi_periodicity(cases):
    rng = random.Random(SEED + 6)
    for c in cases:
        for i in range(20):
            b = c.bases[i % len(c.bases)]
            y = tuple(rng.randint(-12, 12) for _ in range(c.m))
            q = tuple(rng.randint(-4, 4) for _ in range(c.m))
            shift = [0] * c.n
            for j, v in zip(b.sigma, q):
                shift[j] = v
            moved = tuple(a + s for a, s in zip(y, ea.matvec(b.A_sigma, q)))
            assert r1(moved, b) == r1(y, b).shift(shift), (c.A, b.sigma, y, q)


@criterion(6, "every shift vector built in criterion 2 has A_sigma^-1 A eta in [0, 1]")
def test_shift_bound(cases, dual_run):
    total = 0
    for c, t in zip(cases, dual_run[0]):
        bases = {b.sigma: b for b in c.bases}
        for sigma, _u, e in t.entries():
            image = bases[sigma].solve(ea.matvec(c.A, e.eta))
            assert image == e.image
            assert all(0 <= v <= 1 for v in image), (c.A, sigma, _u)
            total += 1
    assert total > 0


@criterion(7, "verify_expansion passes with box 6 at fixed z on 20 bounded instances")
def test_expansion_identity():
    rng = random.Random(SEED + 7)
    z_all = (F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 11), F(1, 13))
    done = 0
    while done < 20:
        # the right side enumerates the full shift grid, so very large grids are skipped
        A = random_instance(rng, ms=(1, 2, 3), extra=3, lo=0, hi=4, max_grid=20000)
        rep = verify_expansion(A, z_all[:len(A[0])], 6)
        assert rep.ok, (A, rep.mismatches[:3])
        assert len(rep.status) == 13 ** len(A)
        done += 1


@criterion(8, "interval example A = [1 1], y = 1: 1/(1-z) + z^2/(z-1) = 1 + z, count 2")
def test_interval_example():
    A = ((1, 1),)
    h = h_primal(A, (1,))
    assert len(h) == 2
    by_sigma = {}
    for term in h:
        # the basis is the coordinate whose exponent in the denominator is +1
        (f,) = term.denominator
        by_sigma[f.exponent.index(-1)] = term
    for k in range(2, 40):
        z = F(k, k + 3)
        # z2 = 1, z1 = z
        assert by_sigma[1].evaluate((z, F(1))) == 1 / (1 - z)
        assert by_sigma[0].evaluate((z, F(1))) == z * z / (z - 1)
        assert evaluate_at(h, (z, 1)) == 1 + z
        z2 = F(1, k)
        assert evaluate_at(h, (z, z2)) == z + z2
    assert count_at_one(h) == 2


@criterion(9, "Z^2 modulo (2, 7): orders 2, 7, 14 and 14 group elements")
def test_group_order_example():
    assert [st.element_order((2, 7), g) for g in ((1, 0), (0, 1), (1, 1))] == [2, 7, 14]
    A = ((2, 0, 1, 0, 1), (0, 7, 0, 1, 1))
    b = st.make_basis(A, (0, 1))
    assert [st.nu_order(b, k) for k in (2, 3, 4)] == [2, 7, 14]
    g = st.QuotientGroup(b)
    assert g.order == 14 == b.mu
    assert len({g.hhat(g.representative(j)) for j in range(14)}) == 14
    assert len({g.hhat((x, y)) for x in range(2) for y in range(7)}) == 14


@criterion(10, "knapsack spot checks through primal, starred, table and dual")
@pytest.mark.parametrize("A, y, want", [
    (((1, 2),), (4,), 3),
    (((1, 2),), (5,), 3),
    (((2, 3),), (6,), 2),
    (((1, 0, 1), (0, 1, 1)), (2, 1), 2),
])
def test_spot_checks(A, y, want):
    rng = random.Random(SEED)
    got = {
        "primal": count_at_one(h_primal(A, y, starred=False), rng),
        "starred": count_at_one(h_primal(A, y, starred=True), rng),
        "table": count_at_one(h_from_table(build_chamber_table(A, y), y), rng),
        "dual": count_at_one(h_dual(A, y), rng),
    }
    assert got == dict.fromkeys(got, want)
