"""Planar polynomial systems built from linear ODEs, with exact invariant certificates."""
from __future__ import annotations

__version__ = "0.1.0"

from .algebra import Poly2, RatFn
from .construct import (
    ChangeOfVar,
    DarbouxLogDeriv,
    LinearODE1,
    LinearODE2,
    PlanarSystem,
    build_first_order,
    build_second_order,
    divide_time,
    predicted_cofactor_1st,
    predicted_cofactor_2nd,
)
from .exprparse import format_poly, parse_poly
from .verify import invariant_darboux_check, invariant_poly_check, quadratic_in_v_irreducibility

__all__ = [
    "__version__",
    "Poly2",
    "RatFn",
    "ChangeOfVar",
    "DarbouxLogDeriv",
    "LinearODE1",
    "LinearODE2",
    "PlanarSystem",
    "build_first_order",
    "build_second_order",
    "divide_time",
    "predicted_cofactor_1st",
    "predicted_cofactor_2nd",
    "format_poly",
    "parse_poly",
    "invariant_darboux_check",
    "invariant_poly_check",
    "quadratic_in_v_irreducibility",
]
