"""Input validation helpers shared by the estimator and the CLI."""

from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from . import exactalg as ea
from .errors import DimensionError, DomainError, RankError
from .structure import rank


def _to_int(v):
    if isinstance(v, (bool, np.bool_)):
        raise DomainError("boolean entries are not integers")
    if isinstance(v, (Integral, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating, Fraction)) and v == int(v):
        return int(v)
    raise DomainError(f"entry {v!r} is not an integer")


def check_instance_matrix(A):
    """Validate ``A`` as a full-row-rank integer matrix; returns a tuple matrix."""
    if isinstance(A, np.ndarray):
        if A.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got {A.ndim} dimensions")
        A = A.tolist()
    rows = [[_to_int(v) for v in row] for row in A]
    M = ea.as_matrix(rows)
    m, n = ea.shape(M)
    if rank(M) < m:
        raise RankError(f"{m}x{n} matrix is rank deficient")
    return M


def check_integer_vector(y, length):
    if isinstance(y, np.ndarray):
        y = y.tolist()
    if isinstance(y, (Integral, np.integer)):
        y = [y]
    out = tuple(_to_int(v) for v in y)
    if len(out) != length:
        raise DimensionError(f"expected {length} entries, got {len(out)}")
    return out


def check_integer_rows(Y, length):
    """Accept a single vector or a 2-d collection of right-hand sides."""
    if isinstance(Y, np.ndarray):
        Y = Y.tolist()
    Y = list(Y)
    if Y and not isinstance(Y[0], (list, tuple)):
        Y = [Y] if length > 1 else [[v] for v in Y]
    return [check_integer_vector(row, length) for row in Y]


def check_rational_vector(z, length):
    if isinstance(z, np.ndarray):
        z = z.tolist()
    out = []
    for v in z:
        if isinstance(v, str):
            try:
                v = Fraction(v)
            except ValueError:
                raise DomainError(f"cannot parse {v!r} as a rational") from None
        elif isinstance(v, float):
            v = Fraction(v)
        elif not isinstance(v, (Rational, np.integer)):
            raise DomainError(f"{v!r} is not rational")
        out.append(Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v))
    if len(out) != length:
        raise DimensionError(f"expected {length} entries, got {len(out)}")
    return tuple(out)
