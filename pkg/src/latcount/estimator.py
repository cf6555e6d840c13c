"""scikit-learn style front end.

``LatticePointCounter`` is fitted on a constraint matrix ``A``; fitting
enumerates the bases, their quotient groups and (for the dual method) a
regular vector.  ``predict`` then maps right-hand sides ``y`` to lattice-point
counts, and ``transform`` maps them to ``h(y; z)`` at a fixed rational ``z``.
"""

import random

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import dual, oracle, primal
from .errors import UnboundedError
from .polyalg import count_at_one, evaluate_at
from .structure import QuotientGroup, chamber_bases, enumerate_bases, is_bounded
from .validation import check_instance_matrix, check_integer_rows, check_rational_vector

METHODS = ("primal", "dual", "table", "oracle")


class LatticePointCounter(BaseEstimator):
    """Count the integer points of ``{x >= 0 : A x = y}``.

    Parameters
    ----------
    method : {"primal", "dual", "table", "oracle"}
        Which formula produces ``h(y; z)``.  ``"table"`` caches one chamber
        table per chamber met during ``predict``.
    starred : bool
        Use the reduced (order-based) numerators and denominators for the
        primal and table methods.
    random_state : int
        Seed for chamber perturbations and specialization directions.
    budget : int
        Largest per-basis shift table the dual method may build.
    """

    def __init__(self, method="primal", starred=True, random_state=0, budget=dual.DEFAULT_BUDGET):
        self.method = method
        self.starred = starred
        self.random_state = random_state
        self.budget = budget

    def fit(self, A, y=None):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        self.A_ = check_instance_matrix(A)
        self.n_constraints_, self.n_features_in_ = len(self.A_), len(self.A_[0])
        self.bases_ = enumerate_bases(self.A_)
        self.groups_ = {b.sigma: QuotientGroup(b) for b in self.bases_}
        self.bounded_ = is_bounded(self.A_)
        self.dual_table_ = None
        if self.method == "dual":
            self.dual_table_ = dual.DualShiftTable(self.A_, self.bases_, budget=self.budget,
                                                    rng=random.Random(self.random_state))
        self.tables_ = {}
        return self

    def _table_for(self, chamber):
        key = tuple(b.sigma for b in chamber.bases)
        table = self.tables_.get(key)
        if table is None:
            table = self.tables_[key] = primal.build_chamber_table(
                self.A_, chamber=chamber, starred=self.starred)
        return table

    def generating_function(self, y):
        """``h(y; z)`` as a :class:`~latcount.polyalg.RationalTermSum`."""
        check_is_fitted(self, "A_")
        (y,) = check_integer_rows([y], self.n_constraints_)
        if self.method == "dual":
            return dual.h_dual(self.A_, y, self.dual_table_)
        if self.method == "table":
            chamber = chamber_bases(self.A_, y, bases=self.bases_, rng=random.Random(self.random_state))
            if not chamber.bases:
                return primal.h_primal(self.A_, y, chamber=chamber)
            return primal.h_from_table(self._table_for(chamber), y)
        return primal.h_primal(self.A_, y, starred=self.starred, bases=self.bases_,
                               groups=self.groups_, rng=random.Random(self.random_state))

    def predict(self, Y):
        """Lattice-point counts, one per row of ``Y``."""
        check_is_fitted(self, "A_")
        if not self.bounded_:
            raise UnboundedError("counts are infinite for an unbounded instance")
        rows = check_integer_rows(Y, self.n_constraints_)
        if self.method == "oracle":
            return np.array([oracle.count_points(self.A_, y) for y in rows])
        rng = random.Random(self.random_state)
        return np.array([count_at_one(self.generating_function(y), rng) for y in rows])

    def transform(self, Y, z):
        """Exact ``h(y; z)`` values (``Fraction`` objects), one per row of ``Y``."""
        check_is_fitted(self, "A_")
        rows = check_integer_rows(Y, self.n_constraints_)
        z = check_rational_vector(z, self.n_features_in_)
        if self.method == "oracle":
            return np.array([oracle.h_brute(self.A_, y, z) for y in rows], dtype=object)
        return np.array([evaluate_at(self.generating_function(y), z) for y in rows], dtype=object)
