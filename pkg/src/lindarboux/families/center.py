"""Reversible quadratic centers ``x' = y + axy``, ``y' = -x + dx^2 - by^2``.

Built from ``(1 + ax) w' + 2b w = 0`` with ``g = y^2`` and
``h = 2x(dx - 1)/(1 + ax)``; the raw construction carries ``2(1 + ax)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import ONE, X, Y, Poly2
from ..construct import (
    ChangeOfVar,
    DarbouxLogDeriv,
    LinearODE1,
    PlanarSystem,
    build_first_order,
)
from ..errors import DomainError
from .common import FirstIntegralEvaluator, as_fraction, conform, require

__all__ = [
    "CenterResult",
    "center_guard",
    "center_ode",
    "center_change",
    "center_system",
    "center_conic",
    "center_line",
    "center_H",
    "center_conic_and_H",
]


def center_guard(a, b, d) -> None:
    for name, val in (("a", a), ("b", b), ("a+b", a + b), ("a+2b", a + 2 * b), ("a+b+d", a + b + d)):
        require(val != 0, f"{name} != 0")


def center_ode(a, b, d) -> LinearODE1:
    a, b, d = as_fraction(a), as_fraction(b), as_fraction(d)
    return LinearODE1(Poly2.const(2 * b), ONE + X * a, X * (X * d - 1) * 2, ONE + X * a)


def center_change() -> ChangeOfVar:
    return ChangeOfVar(Y * Y, ONE)


def center_system(a, b, d) -> PlanarSystem:
    a, b, d = as_fraction(a), as_fraction(b), as_fraction(d)
    center_guard(a, b, d)
    P = Y + X * Y * a
    Q = -X + X * X * d - Y * Y * b
    built = build_first_order(center_ode(a, b, d), center_change())
    return conform(built, ONE + X * a, P, Q)


def center_conic(a, b, d) -> Poly2:
    """``-b(a+b)(a+2b) y^2 + b(a+2b) d x^2 - 2b(a+b+d) x + (a+b+d)``.

    The choice of the free constant cancels the ``(1+ax)^(-2b/a)`` terms.
    """
    a, b, d = as_fraction(a), as_fraction(b), as_fraction(d)
    center_guard(a, b, d)
    s = a + b + d
    return X * X * (b * (a + 2 * b) * d) - X * (2 * b * s) + s - Y * Y * (b * (a + b) * (a + 2 * b))


def center_line(a) -> DarbouxLogDeriv:
    """``d log (1 + ax)^(1/a)``; its cofactor on the system is ``y``."""
    a = as_fraction(a)
    return DarbouxLogDeriv.of_poly(ONE + X * a, 1 / a)


def center_H(a, b, d) -> FirstIntegralEvaluator:
    """``(1 + ax)^(2b/a) f`` with ``f`` the invariant conic."""
    f = center_conic(a, b, d).float_fn()
    af, bf = float(a), float(b)
    e = 2 * bf / af

    def H(x, y):
        base = 1 + af * x
        if base <= 0:
            raise DomainError("1 + a*x must be positive")
        return base**e * f(x, y)

    return FirstIntegralEvaluator(f"center(a={a},b={b},d={d})", formula=H)


@dataclass(frozen=True)
class CenterResult:
    system: PlanarSystem
    conic: Poly2
    cofactor: Poly2
    line: DarbouxLogDeriv
    line_cofactor: Poly2
    H: FirstIntegralEvaluator


def center_conic_and_H(a, b, d) -> CenterResult:
    a, b, d = as_fraction(a), as_fraction(b), as_fraction(d)
    sys = center_system(a, b, d)
    return CenterResult(sys, center_conic(a, b, d), Y * (-2 * b), center_line(a), Y, center_H(a, b, d))
