"""Exact Grassmann-valued polynomial algebra."""

from oddcon.algebra.expression import format_poly, parse_expression
from oddcon.algebra.grassmann import (
    EVEN,
    ODD,
    ChartSignature,
    GradedPoly,
    Monomial,
    gp_eval_even,
    gp_mul,
    gp_partial,
    gp_substitute,
)

__all__ = [
    "EVEN",
    "ODD",
    "ChartSignature",
    "GradedPoly",
    "Monomial",
    "format_poly",
    "gp_eval_even",
    "gp_mul",
    "gp_partial",
    "gp_substitute",
    "parse_expression",
]
