"""Exact-arithmetic toolkit for two series of orthogonal modular varieties:
branch-divisor censuses, cusp-form dimension formulas, leading-term
obstruction ingredients, and the Kodaira-type verdict engine.
"""

__version__ = "0.1.0"

from .exactnum import QuadSurd, Rational, bernoulli, kronecker  # noqa: F401
from .jacobi import cusp_weight_menu, dim_jacobi_cusp  # noqa: F401
from .lattice import Lattice, build_lattice, orbit_census  # noqa: F401
from .verdict import (  # noqa: F401
    SeriesPoint,
    Verdict,
    beta,
    beta_predicate,
    bii_holds,
    scan_threshold,
    verdict_for,
)
