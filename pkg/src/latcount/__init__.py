"""Exact lattice-point counting for polyhedra ``{x >= 0 : A x = y}``.

Three routes to the generating function ``h(y; z) = sum z^x`` are provided:
the primal cone decomposition (optionally through precomputed chamber
tables), the dual expansion built from shift vectors, and a brute-force
oracle used to certify both.
"""

from .dual import DualShiftTable, h_dual, verify_expansion
from .estimator import LatticePointCounter
from .oracle import enumerate_points, h_brute, h_brute_symbolic
from .polyalg import (GeometricFactor, LaurentSum, RationalTermSum, count_at_one, evaluate_at,
                      limit_at_one, specialize_univariate)
from .primal import ChamberTable, build_chamber_table, h_from_table, h_primal, r1, r2
from .structure import (chamber_bases, enumerate_bases, is_bounded, nu_order, regular_vector)

__version__ = "0.1.0"

__all__ = [
    "ChamberTable", "DualShiftTable", "GeometricFactor", "LatticePointCounter", "LaurentSum",
    "RationalTermSum", "build_chamber_table", "chamber_bases", "count_at_one", "enumerate_bases",
    "enumerate_points", "evaluate_at", "h_brute", "h_brute_symbolic", "h_dual", "h_from_table",
    "h_primal", "is_bounded", "limit_at_one", "nu_order", "r1", "r2", "regular_vector",
    "specialize_univariate", "verify_expansion",
]
