"""Exact Stirling-series coefficients and numerical checks of the Laplace-method derivation."""

from .exactfield import QSqrt2, format_rational, qsqrt2_arith, qsqrt2_to_decimal
from .precision import PrecisionContext
from .series_engine import (
    CoeffTable,
    StirlingSeries,
    compute_coefficients,
    gamma_half_integer_ratio,
    maclaurin_eval,
    stirling_coefficients,
)

__all__ = [
    "CoeffTable",
    "PrecisionContext",
    "QSqrt2",
    "StirlingSeries",
    "compute_coefficients",
    "format_rational",
    "gamma_half_integer_ratio",
    "maclaurin_eval",
    "qsqrt2_arith",
    "qsqrt2_to_decimal",
    "stirling_coefficients",
]
