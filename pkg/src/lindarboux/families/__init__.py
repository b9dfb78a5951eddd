"""The four example families: systems, exact invariants and first-integral evaluators."""
from __future__ import annotations

from ..construct import PlanarSystem
from .center import CenterResult, center_conic_and_H, center_system
from .common import (
    BirationalMap,
    FirstIntegralEvaluator,
    FundamentalPair,
    birational_pullback,
    ratfn_compose,
)
from .lv import LVInvariant, lv_H_eval, lv_invariant_poly, lv_map, lv_system, lv_uv_system
from .newfam import NewfamResult, newfam_invariant_and_H, newfam_map, newfam_system
from .orth import (
    OrthFamilySpec,
    algcurve_linear_y,
    orth_system,
    orthfam_H_eval,
    orthpoly_solve,
)

__all__ = [
    "family_system",
    "BirationalMap",
    "FirstIntegralEvaluator",
    "FundamentalPair",
    "birational_pullback",
    "ratfn_compose",
    "OrthFamilySpec",
    "orthpoly_solve",
    "algcurve_linear_y",
    "orthfam_H_eval",
    "orth_system",
    "LVInvariant",
    "lv_invariant_poly",
    "lv_H_eval",
    "lv_map",
    "lv_system",
    "lv_uv_system",
    "NewfamResult",
    "newfam_invariant_and_H",
    "newfam_map",
    "newfam_system",
    "CenterResult",
    "center_conic_and_H",
    "center_system",
]


def family_system(family: str, **params) -> PlanarSystem:
    """``family`` is one of ``orth``, ``lv``, ``newfam``, ``center``.

    ``orth`` takes ``spec`` (an :class:`OrthFamilySpec`); ``lv`` takes ``ell``;
    ``newfam`` takes ``a`` and ``ell``; ``center`` takes ``a``, ``b``, ``d``.
    """
    if family == "orth":
        return orth_system(params["spec"])
    if family == "lv":
        return lv_system(params["ell"])
    if family in ("newfam", "new"):
        return newfam_system(params["a"], params["ell"])
    if family == "center":
        return center_system(params["a"], params["b"], params["d"])
    raise ValueError(f"unknown family {family!r}")
