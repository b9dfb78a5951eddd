"""Quadratic family with invariant curves of degree ``2l`` (parameters ``a``, ``l``).

In ``X = y/x^2, Y = x`` and after dividing time by ``Y`` the system is built
from ``2X(X-1)^2 w'' + (2l - 2a + 3X)(X-1) w' + l(1-2a) w = 0`` with
``g = a(2l-1)Y/(X-1)``; the raw construction carries a further ``-(X-1)^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..algebra import ONE, X, Y, Poly2, RatFn
from ..construct import ChangeOfVar, LinearODE2, PlanarSystem, build_second_order
from ..errors import DomainError, LinearDependence
from ..special import hyp2f1
from .common import (
    BirationalMap,
    FirstIntegralEvaluator,
    FundamentalPair,
    as_fraction,
    birational_pullback,
    conform,
    require,
)

__all__ = [
    "NewfamResult",
    "newfam_guard",
    "newfam_system",
    "newfam_ode",
    "newfam_change",
    "newfam_transformed_system",
    "newfam_map",
    "newfam_cofactor",
    "newfam_invariant_XY",
    "newfam_display_f1",
    "newfam_pair",
    "newfam_H",
    "newfam_invariant_and_H",
]


def newfam_guard(a, ell) -> None:
    require(a != 0, "a != 0")
    require(ell != Fraction(1, 2), "ell != 1/2")
    require((2 * ell - 1) * a * a - 2 * ell != 0, "(2*ell - 1)*a^2 - 2*ell != 0")


def newfam_system(a, ell) -> PlanarSystem:
    a, ell = as_fraction(a), as_fraction(ell)
    newfam_guard(a, ell)
    m = 2 * ell - 1
    P = X * ((2 * a - 1) * ell) - Y * (a * m) + X * X * (2 * a * (a - ell) * m) - X * Y * (2 * a * a * m * m)
    Q = Y * (Poly2.const(2 * (2 * a - 1) * ell) + X * (2 * a * (2 * a - 2 * ell - 1) * m) - Y * (4 * a * a * m * m))
    return PlanarSystem(P, Q)


def newfam_ode(a, ell) -> LinearODE2:
    a, ell = as_fraction(a), as_fraction(ell)
    A2 = X * (X - 1) * (X - 1) * 2
    A1 = (X * 3 + (2 * ell - 2 * a)) * (X - 1)
    A0 = Poly2.const(ell * (1 - 2 * a))
    return LinearODE2(A0, A1, A2)


def newfam_change(a, ell) -> ChangeOfVar:
    a, ell = as_fraction(a), as_fraction(ell)
    return ChangeOfVar(Y * (a * (2 * ell - 1)), X - 1)


def newfam_transformed_system(a, ell) -> PlanarSystem:
    """The ``(X, Y)`` system divided by ``Y``, tied to the raw construction."""
    a, ell = as_fraction(a), as_fraction(ell)
    newfam_guard(a, ell)
    m = 2 * ell - 1
    P = (X - 1) * X * (2 * a * m)
    Q = Poly2.const((2 * a - 1) * ell) + (Poly2.const(2 * a - 2 * ell) - X) * Y * (a * m) - X * Y * Y * (2 * a * a * m * m)
    built = build_second_order(newfam_ode(a, ell), newfam_change(a, ell))
    return conform(built, (X - 1) * (X - 1), P, Q)


def newfam_map() -> BirationalMap:
    """``x = Y, y = X Y^2``; inverse ``X = y/x^2, Y = x``."""
    fwd = (RatFn(Y), RatFn(X * Y * Y))
    inv = (RatFn(Y, X * X), RatFn(X))
    return BirationalMap(fwd, inv, "newfam")


def newfam_cofactor(a, ell) -> Poly2:
    a, ell = as_fraction(a), as_fraction(ell)
    m = 2 * ell - 1
    return (Poly2.const(2 * a - 1) + X * (4 * a * (a - ell)) - Y * (4 * m * a * a)) * (ell * m)


# -- exact invariant via terminating series -------------------------------------

# polynomials in the parameter a are stored as Poly2 in the first slot
_A = X


def _poch_poly(start: Poly2, n: int) -> Poly2:
    out = ONE
    for i in range(n):
        out = out * (start + i)
    return out


def _rpoch(c: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= c + i
    return out


def newfam_invariant_XY(a, ell: int) -> Poly2:
    """``(X-1)^l (g1 w1' - g0 w1)`` for ``w1 = (X-1)^(-l) 2F1(1/2-l, -l; a-l; X)``.

    The series is scaled by ``(a-l)_l`` so its coefficients are polynomials in
    ``a``; when ``a - l`` hits a pole the highest common power of ``(a - a0)``
    is divided out before evaluating (a limit in ``a``).
    """
    a0 = as_fraction(a)
    ell_f = as_fraction(ell)
    if ell_f.denominator != 1 or ell_f < 1:
        raise ValueError("the polynomial branch needs a natural ell")
    newfam_guard(a0, ell_f)
    l = int(ell_f)
    half = Fraction(1, 2) - l
    # F = sum_k cF[k] X^k with cF[k] polynomial in a
    cF = []
    for k in range(l + 1):
        base = _rpoch(half, k) * _rpoch(Fraction(-l), k) / _rpoch(Fraction(1), k)
        cF.append(_poch_poly(_A - l + k, l - k) * base)
    # G = (X-1) F' - (l + a(2l-1) Y) F, coefficients keyed by (i, j) in (X, Y)
    G: Dict[Tuple[int, int], Poly2] = {}

    def add(key, val):
        G[key] = G.get(key, Poly2()) + val

    for k in range(l + 1):
        if k:
            add((k, 0), cF[k] * k)
            add((k - 1, 0), -cF[k] * k)
        add((k, 0), -cF[k] * l)
        add((k, 1), -cF[k] * _A * (2 * l - 1))
    shifted = {key: p.subs(x=_A + a0) for key, p in G.items() if p}
    order = min(min(i for (i, _j) in p.terms) for p in shifted.values())
    terms = {key: p.coeff(order, 0) for key, p in shifted.items()}
    return Poly2(terms)


def newfam_display_f1(a, ell: int) -> Poly2:
    """The closed-form ``f1(x, y)`` (two terminating series in ``y/x^2``), cleared by ``x^(2l-1)``-style monomials.

    Only for ``a`` away from the series poles.
    """
    a, l = as_fraction(a), int(ell)
    m = 2 * l - 1

    def series(p1, p2, q):
        out = {}
        k = 0
        while True:
            c = _rpoch(p1, k) * _rpoch(p2, k) / (_rpoch(q, k) * _rpoch(Fraction(1), k))
            if not c:
                break
            out[k] = c
            k += 1
        return out

    s1 = series(Fraction(1, 2) - l, Fraction(-l), a - l)
    s2 = series(Fraction(3, 2) - l, Fraction(1 - l), 1 + a - l)
    lau: Dict[Tuple[int, int], Fraction] = {}

    def add(i, j, c):
        lau[(i, j)] = lau.get((i, j), 0) + c

    for k, c in s1.items():
        # 2(a-l)(l + (2l-1) a x) x^(2l-1) (y/x^2)^k
        add(m - 2 * k, k, 2 * (a - l) * l * c)
        add(m + 1 - 2 * k, k, 2 * (a - l) * m * a * c)
    for k, c in s2.items():
        # l(2l-1) x^(2l-3) (x^2 - y) (y/x^2)^k
        add(m - 2 * k, k, l * m * c)
        add(m - 2 - 2 * k, k + 1, -l * m * c)
    lau = {k: v for k, v in lau.items() if v}
    if not lau:
        return Poly2()
    shift = min(i for i, _ in lau)
    return Poly2({(i - shift, j): c for (i, j), c in lau.items()})


# -- numeric first integral --------------------------------------------------------

def _check_unit(Xv: float) -> None:
    if not 0 < Xv < 1:
        raise DomainError(f"X = {Xv} outside (0, 1)")


def _kummer_solution(pre: float, e0: float, p1: float, p2: float, q: float, at_one: bool):
    """``(1-X)^(-l) * t^e0 * 2F1(p1, p2; q; t)`` and its X-derivative, ``t = X`` or ``1 - X``."""
    sgn = -1.0 if at_one else 1.0

    def w(Xv):
        _check_unit(Xv)
        t = 1 - Xv if at_one else Xv
        return (1 - Xv) ** -pre * t**e0 * hyp2f1(p1, p2, q, t)[0].value

    def dw(Xv):
        _check_unit(Xv)
        t = 1 - Xv if at_one else Xv
        v, d = hyp2f1(p1, p2, q, t)
        inner = sgn * (e0 * v.value / t + d.value) if e0 else sgn * d.value
        return (1 - Xv) ** -pre * t**e0 * (pre * v.value / (1 - Xv) + inner)

    return w, dw


def newfam_pair(a: float, ell: float) -> FundamentalPair:
    """Solutions ``(1-X)^(-l) F`` where ``F`` solves Gauss' equation with ``(1/2-l, -l; a-l)``.

    Around ``X = 0``: ``F = 2F1(1/2-l, -l; a-l; X)`` and
    ``X^(1-a+l) 2F1(3/2-a, 1-a; 2-a+l; X)``.  When ``a - l`` is an integer the
    exponents at 0 differ by an integer and the pair around ``X = 1`` is used.
    """
    a, ell = float(a), float(ell)
    p1, p2, c = 0.5 - ell, -ell, a - ell
    if not c.is_integer():
        w1, dw1 = _kummer_solution(ell, 0.0, p1, p2, c, False)
        w2, dw2 = _kummer_solution(ell, 1 - c, p1 - c + 1, p2 - c + 1, 2 - c, False)
        return FundamentalPair("newfam", {"a": a, "ell": ell}, w1, dw1, w2, dw2)
    e = c - p1 - p2
    if e.is_integer():
        raise LinearDependence(f"a = {a}, ell = {ell}: both Kummer pairs degenerate")
    w1, dw1 = _kummer_solution(ell, 0.0, p1, p2, 1 - e, True)
    w2, dw2 = _kummer_solution(ell, e, c - p1, c - p2, 1 + e, True)
    return FundamentalPair("newfam-at-1", {"a": a, "ell": ell}, w1, dw1, w2, dw2)


def newfam_H(a: float, ell: float) -> FirstIntegralEvaluator:
    """``f1/f2`` evaluated at ``X = y/x^2``, ``Y = x`` (needs ``0 < y/x^2 < 1``)."""
    a_f, l_f = as_fraction(a), as_fraction(ell)
    newfam_guard(a_f, l_f)

    def coords(x, y):
        if x == 0:
            raise DomainError("x = 0 is outside the chart")
        return y / (x * x), x

    return FirstIntegralEvaluator(
        f"newfam(a={a},l={ell})", newfam_pair(a, ell), newfam_change(a_f, l_f), coords=coords
    )


@dataclass(frozen=True)
class NewfamResult:
    system: PlanarSystem
    f1: Optional[Poly2]
    cofactor: Poly2
    H: FirstIntegralEvaluator


def newfam_invariant_and_H(a, ell) -> NewfamResult:
    a_f, l_f = as_fraction(a), as_fraction(ell)
    newfam_guard(a_f, l_f)
    f1 = None
    if l_f.denominator == 1 and l_f >= 1:
        f1 = birational_pullback(newfam_map(), newfam_invariant_XY(a_f, int(l_f)))
    return NewfamResult(newfam_system(a_f, l_f), f1, newfam_cofactor(a_f, l_f), newfam_H(a, ell))
