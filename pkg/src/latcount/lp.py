"""Exact two-phase simplex over the rationals (Bland's rule).

Only the standard form ``max c.x  s.t.  A x = b, x >= 0`` is supported,
which is all the boundedness test and the brute-force oracle need.
"""

from fractions import Fraction

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


def _pivot(T, basis, r, c):
    p = T[r][c]
    T[r] = [v / p for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    basis[r] = c


def _run(T, basis, ncols):
    """Maximize the objective stored in the last row (as reduced costs)."""
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def linprog_exact(A, b, c=None):
    """Solve ``max c.x`` subject to ``A x = b``, ``x >= 0`` exactly.

    Returns ``(status, x, value)``; ``x`` and ``value`` are ``None`` unless
    the status is ``"optimal"``.  With ``c`` omitted only feasibility is
    decided and a feasible vertex is returned.
    """
    m, n = len(A), len(A[0])
    rows = []
    rhs = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        rows.append([Fraction(s * v) for v in A[i]])
        rhs.append(Fraction(s * b[i]))
    # phase 1: artificial columns n .. n+m-1
    T = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    T.append(obj)
    _run(T, basis, n + m)
    if T[-1][-1] != 0:
        return INFEASIBLE, None, None
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    c = [Fraction(0)] * n if c is None else [Fraction(v) for v in c]
    obj = [-v for v in c] + [Fraction(0)]
    for i, bi in enumerate(basis):
        f = obj[bi]
        if f != 0:
            obj = [a - f * v for a, v in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    return OPTIMAL, tuple(x), T[-1][-1]
