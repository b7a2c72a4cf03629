"""Truncated q-series toolkit for checking overpartition congruences."""

from .series import (
    EXACT,
    CoefficientRing,
    NotInvertible,
    RingMismatch,
    Series,
    congruent_upto,
    extract_ap,
    invert,
    make,
    mod,
    mul,
    pow_,
    reduce_mod,
)
from .eta import (
    EtaExpr,
    EtaMonomial,
    EtaQuotient,
    expand_eta_quotient,
    expand_expr,
    expand_f,
    jacobi_theta3,
    overpartition_gf,
)

__version__ = "0.1.0"
