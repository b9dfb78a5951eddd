"""Lotka-Volterra family ``x' = x(1 - x/2 + y)``, ``y' = y(-(2l+1)/(2l-1) + x/2 - y)``.

Under ``u = xy, v = (1-2l)/(4y)`` it becomes a system built from
``u w'' + (1+2l)/2 w' - (1-2l)^2/8 w = 0`` with ``g = v`` (up to a constant
time scale).  For natural ``l`` the Bessel-product combination is a polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Tuple

from ..algebra import ONE, X, Y, Poly2, RatFn
from ..construct import ChangeOfVar, LinearODE2, PlanarSystem, build_second_order
from ..errors import DomainError, GuardViolation, LinearDependence
from ..special import bessel_i, bessel_i_deriv
from .common import (
    BirationalMap,
    FirstIntegralEvaluator,
    FundamentalPair,
    _ratio,
    as_fraction,
    birational_pullback,
    conform,
    require,
)

__all__ = [
    "LVInvariant",
    "lv_system",
    "lv_uv_ode",
    "lv_uv_change",
    "lv_uv_system",
    "lv_map",
    "bessel_square_diff",
    "bessel_cross_diff",
    "lv_invariant_poly",
    "lv_H_eval",
    "lv_display_H",
    "lv_theorem_H",
]

Laurent = Dict[int, Fraction]


def _guard(ell: Fraction) -> None:
    require(ell != Fraction(1, 2), "ell != 1/2")


def lv_system(ell) -> PlanarSystem:
    ell = as_fraction(ell)
    _guard(ell)
    r = (2 * ell + 1) / (2 * ell - 1)
    P = X * (ONE - X / 2 + Y)
    Q = Y * (X / 2 - Y - r)
    return PlanarSystem(P, Q)


def lv_uv_ode(ell) -> LinearODE2:
    ell = as_fraction(ell)
    return LinearODE2(Poly2.const(-((1 - 2 * ell) ** 2) / 8), Poly2.const((1 + 2 * ell) / 2), X)


def lv_uv_change() -> ChangeOfVar:
    return ChangeOfVar(Y, ONE)


def lv_uv_system(ell) -> PlanarSystem:
    """The ``(u, v)`` system (u in the first slot), tied to the raw construction."""
    ell = as_fraction(ell)
    _guard(ell)
    P = X * (2 / (1 - 2 * ell))
    Q = Poly2.const((1 - 2 * ell) / 4) + Y * ((2 * ell + 1) / (2 * ell - 1)) + X * Y * Y * (2 / (2 * ell - 1))
    built = build_second_order(lv_uv_ode(ell), lv_uv_change())
    return conform(built, ONE, P, Q)


def lv_map(ell) -> BirationalMap:
    """``x = 4uv/(1-2l), y = (1-2l)/(4v)``; inverse ``u = xy, v = (1-2l)/(4y)``."""
    ell = as_fraction(ell)
    _guard(ell)
    c = 1 - 2 * ell
    fwd = (RatFn(X * Y * (4 / c)), RatFn(Poly2.const(c), Y * 4))
    inv = (RatFn(X * Y), RatFn(Poly2.const(c), Y * 4))
    return BirationalMap(fwd, inv, "lv")


# -- exact Bessel-product sums ---------------------------------------------------

def bessel_square_diff(n: int) -> Laurent:
    """``(pi z / 2) (I_nu^2 - I_{-nu}^2)`` for ``nu = n + 1/2``, as a Laurent polynomial in ``z``."""
    out: Laurent = {}
    for k in range(n + 1):
        c = Fraction(
            (-1) ** (k + 1) * factorial(2 * n - k) * factorial(2 * n - 2 * k),
            factorial(k) * factorial(n - k) ** 2 * 2 ** (2 * (n - k)),
        )
        e = -2 * (n - k)
        out[e] = out.get(e, 0) + c
    return out


def _series(terms) -> Laurent:
    out: Laurent = {}
    for coef, power in terms:
        # coef * (1/(2z))^power
        e = -power
        out[e] = out.get(e, 0) + Fraction(coef) / 2**power
    return out


def _lmul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _lsub(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in out.items() if c}


def bessel_cross_diff(ell: int) -> Laurent:
    """``(pi z / 2) (I_{l+1/2} I_{l-1/2} - I_{-(l+1/2)} I_{-(l-1/2)})`` for natural ``l``.

    Odd powers of ``1/(2z)`` in the second factor of each product carry
    exponent ``2j + 1``; with ``2j - 1`` the identity fails already at ``l = 1``.
    """
    f = factorial
    sa = _series((f(ell + 2 * i) // (f(2 * i) * f(ell - 2 * i)), 2 * i) for i in range(ell // 2 + 1))
    sb = _series(
        (f(ell + 2 * j) // (f(2 * j + 1) * f(ell - 2 * j - 2)), 2 * j + 1) for j in range((ell - 2) // 2 + 1)
    )
    sc = _series(
        (f(ell + 2 * i + 1) // (f(2 * i + 1) * f(ell - 2 * i - 1)), 2 * i + 1) for i in range((ell - 1) // 2 + 1)
    )
    sd = _series((f(ell + 2 * j - 1) // (f(2 * j) * f(ell - 2 * j - 1)), 2 * j) for j in range((ell - 1) // 2 + 1))
    body = _lsub(_lmul(sa, sb), _lmul(sc, sd))
    sign = -1 if ell % 2 else 1
    return {e: sign * c for e, c in body.items()}


@dataclass(frozen=True)
class LVInvariant:
    ell: int
    uv: Poly2
    xy: Poly2
    z_coeffs: Tuple[Laurent, Laurent, Laurent]


def lv_invariant_poly(ell: int) -> LVInvariant:
    """Invariant curve for natural ``l`` in ``(u, v)`` and pulled back to ``(x, y)``.

    ``f = z^(2l+1) (f1^2 - f2^2)`` with ``f_i = (1-2l)^2 I_{+-(l+1/2)}(z) - 4vz I_{+-(l-1/2)}(z)``;
    the factor ``pi`` is dropped.  Each ``v``-coefficient is even in ``z`` and
    ``z^2 = (1-2l)^2 u / 2``.
    """
    if int(ell) != ell or ell < 1:
        raise ValueError("ell must be a natural number >= 1")
    ell = int(ell)
    m = 1 - 2 * ell
    # pi z (I.I - I.I) = 2 * bessel_*_diff; f = z^(2l) * 2 * [...]
    c0 = {e + 2 * ell: 2 * m**4 * c for e, c in bessel_square_diff(ell).items()}
    c1 = {e + 2 * ell + 1: -16 * m**2 * c for e, c in bessel_cross_diff(ell).items()}
    c2 = {e + 2 * ell + 2: 32 * c for e, c in bessel_square_diff(ell - 1).items()}
    zsq = Fraction(m * m, 2)
    terms: Dict[Tuple[int, int], Fraction] = {}
    for power_v, coeffs in enumerate((c0, c1, c2)):
        for e, c in coeffs.items():
            if e < 0 or e % 2:
                raise ArithmeticError(f"v^{power_v} coefficient has z^{e}; the closed form did not reduce")
            terms[(e // 2, power_v)] = terms.get((e // 2, power_v), 0) + c * zsq ** (e // 2)
    uv = Poly2(terms).primitive()
    xy = birational_pullback(lv_map(ell), uv)
    return LVInvariant(ell, uv, xy, (c0, c1, c2))


# -- numeric first integral --------------------------------------------------------

def _numeric_guard(ell: float) -> None:
    if ell == 0.5:
        raise GuardViolation("ell != 1/2")
    if float(ell + 0.5).is_integer():
        raise LinearDependence(f"ell = {ell}: the two Bessel solutions are linearly dependent")


def lv_H_eval(ell: float, x: float, y: float) -> float:
    """Closed-form first integral of the LV system for ``x, y > 0``."""
    ell = float(ell)
    _numeric_guard(ell)
    if x <= 0 or y <= 0:
        raise DomainError("lv first integral needs x > 0 and y > 0")
    m = 1 - 2 * ell
    t = abs(m) * math.sqrt(x * y) / math.sqrt(2)
    sigma = 1.0 if m > 0 else -1.0
    a, b = ell + 0.5, ell - 0.5
    sy, sx = math.sqrt(2 * y), math.sqrt(x)
    num = sy * bessel_i(a, t).value - sigma * sx * bessel_i(b, t).value
    den = sy * bessel_i(-a, t).value - sigma * sx * bessel_i(-b, t).value
    return _ratio(num, den)


def lv_display_H(ell: float) -> FirstIntegralEvaluator:
    return FirstIntegralEvaluator(f"lv-display(l={ell})", formula=lambda x, y: lv_H_eval(ell, x, y))


def lv_pair(ell: float) -> FundamentalPair:
    """``w = u^p I_{+-mu}(|c| sqrt(u))`` with ``p = (1-2l)/4``, ``mu = 1/2 - l``, ``c = (1-2l)/sqrt 2``."""
    ell = float(ell)
    _numeric_guard(ell)
    p = (1 - 2 * ell) / 4
    mu = 0.5 - ell
    c = abs(1 - 2 * ell) / math.sqrt(2)

    def make(order):
        def w(u):
            if u <= 0:
                raise DomainError("u must be positive")
            return u**p * bessel_i(order, c * math.sqrt(u)).value

        def dw(u):
            if u <= 0:
                raise DomainError("u must be positive")
            r = math.sqrt(u)
            z = c * r
            return p * u ** (p - 1) * bessel_i(order, z).value + u**p * bessel_i_deriv(order, z).value * c / (2 * r)

        return w, dw

    w1, dw1 = make(mu)
    w2, dw2 = make(-mu)
    return FundamentalPair("lv", {"ell": ell}, w1, dw1, w2, dw2)


def lv_theorem_H(ell: float) -> FirstIntegralEvaluator:
    """``f1/f2`` with ``f_i = w_i' - v w_i`` evaluated at ``u = xy, v = (1-2l)/(4y)``."""
    ell = float(ell)
    m = 1 - 2 * ell
    return FirstIntegralEvaluator(
        f"lv-theorem(l={ell})",
        lv_pair(ell),
        lv_uv_change(),
        coords=lambda x, y: (x * y, m / (4 * y)),
    )


__all__ += ["lv_pair"]
