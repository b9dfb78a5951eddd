"""Shared plumbing for the example families: pairs, evaluators, maps, guards."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from ..algebra import Poly2, RatFn, poly_divexact
from ..construct import ChangeOfVar, PlanarSystem, divide_time
from ..errors import DenominatorCollapse, DivByZero, DomainError, GuardViolation, NotDivisible

__all__ = [
    "FundamentalPair",
    "FirstIntegralEvaluator",
    "BirationalMap",
    "birational_pullback",
    "ratfn_compose",
    "conform",
    "as_fraction",
    "require",
]

RealFn = Callable[[float], float]


def as_fraction(v) -> Fraction:
    """Exact rational from int, Fraction or decimal text; floats via their repr."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def require(cond: bool, text: str) -> None:
    if not cond:
        raise GuardViolation(text)


@dataclass(frozen=True)
class FundamentalPair:
    """Two independent solutions of a linear ODE, with derivatives, as float callables."""

    tag: str
    params: Dict[str, float]
    w1: RealFn
    dw1: RealFn
    w2: RealFn
    dw2: RealFn

    def wronskian(self, s: float) -> float:
        return self.w1(s) * self.dw2(s) - self.w2(s) * self.dw1(s)


@dataclass(frozen=True)
class FirstIntegralEvaluator:
    """``H = f1/f2`` with ``f_i = g1*w_i' - g0*w_i``, or an explicit closed form.

    ``coords`` maps the system's ``(x, y)`` into the pair's variables when the
    pair lives on a transformed system (birational change of coordinates).
    ``formula``, when given, is what ``__call__`` evaluates; the pair route
    remains available as :meth:`theorem_value`.
    """

    label: str
    pair: Optional[FundamentalPair] = None
    change: Optional[ChangeOfVar] = None
    coords: Optional[Callable[[float, float], Tuple[float, float]]] = None
    formula: Optional[Callable[[float, float], float]] = None
    meta: Dict[str, str] = field(default_factory=dict)

    def parts(self, x: float, y: float) -> Tuple[float, float]:
        if self.pair is None or self.change is None:
            raise ValueError(f"{self.label}: no fundamental pair attached")
        s, v = self.coords(x, y) if self.coords else (x, y)
        g0 = self.change.g0(s, v)
        g1 = self.change.g1(s, v)
        g0, g1 = float(g0), float(g1)
        p = self.pair
        f1 = g1 * p.dw1(s) - g0 * p.w1(s)
        f2 = g1 * p.dw2(s) - g0 * p.w2(s)
        return f1, f2

    def theorem_value(self, x: float, y: float) -> float:
        f1, f2 = self.parts(x, y)
        return _ratio(f1, f2)

    def __call__(self, x: float, y: float) -> float:
        if self.formula is not None:
            return self.formula(x, y)
        return self.theorem_value(x, y)


def _ratio(a: float, b: float) -> float:
    if b == 0.0 or not math.isfinite(b):
        raise DivByZero("first-integral denominator vanished")
    v = a / b
    if not math.isfinite(v):
        raise DomainError("non-finite first-integral value")
    return v


# -- birational maps ----------------------------------------------------------

def ratfn_compose(r: RatFn, u: RatFn, v: RatFn) -> RatFn:
    """``r(u, v)`` for rational ``u``, ``v``."""

    def sub(p: Poly2) -> RatFn:
        out = RatFn(Poly2())
        for (i, j), c in p.items():
            out = out + (u**i) * (v**j) * RatFn(Poly2.const(c))
        return out

    return sub(r.num) / sub(r.den)


@dataclass(frozen=True)
class BirationalMap:
    """Old coordinates ``(x, y)`` in terms of new ``(u, v)`` and back.

    ``forward = (x(u, v), y(u, v))`` and ``inverse = (u(x, y), v(x, y))``.
    Both live on the same two slots of :class:`Poly2` (first slot x or u).
    """

    forward: Tuple[RatFn, RatFn]
    inverse: Tuple[RatFn, RatFn]
    name: str = ""

    def check(self) -> bool:
        """Forward after inverse is the identity, as rational functions."""
        from ..algebra import X, Y

        fx, fy = self.forward
        u, v = self.inverse
        return ratfn_compose(fx, u, v).equals(RatFn(X)) and ratfn_compose(fy, u, v).equals(RatFn(Y))


def birational_pullback(m: BirationalMap, f: Poly2) -> Poly2:
    """Rewrite ``f(u, v)`` in the old coordinates and clear denominators minimally."""
    u, v = m.inverse
    if not u.num or not v.num:
        raise DenominatorCollapse("map component is identically zero")
    if not f:
        raise DenominatorCollapse("zero polynomial")
    du, dv = f.degree_in("x"), f.degree_in("y")
    # sum c * a^i b^(du-i) * c^j d^(dv-j) over the support
    pu = [u.num**i for i in range(du + 1)]
    qu = [u.den**i for i in range(du + 1)]
    pv = [v.num**j for j in range(dv + 1)]
    qv = [v.den**j for j in range(dv + 1)]
    out = Poly2()
    for (i, j), c in f.items():
        out = out + pu[i] * qu[du - i] * pv[j] * qv[dv - j] * c
    if not out:
        raise DenominatorCollapse("pullback vanishes identically")
    if len(u.den) == 1 and len(v.den) == 1:
        # monomial denominators: cancel the largest monomial shared by the
        # numerator and the clearing factor
        D = u.den**du * v.den**dv
        (ni, nj), (di, dj) = out.monomial_content(), D.monomial_content()
        mono = Poly2.monomial(min(ni, di), min(nj, dj))
        return poly_divexact(out, mono).primitive()
    for den, count in ((u.den, du), (v.den, dv)):
        while count and not den.is_constant():
            try:
                out = poly_divexact(out, den)
            except NotDivisible:
                break
            count -= 1
    return out.primitive()


# -- matching a built system to a displayed one --------------------------------

def conform(built: PlanarSystem, factor: Poly2, P: Poly2, Q: Poly2) -> PlanarSystem:
    """Return ``(P, Q)`` carrying the scale/time bookkeeping of ``built``.

    ``built`` divided by ``factor`` must equal ``(P, Q)`` up to a nonzero
    rational constant; anything else is a construction error.
    """
    factor = Poly2.coerce(factor)
    sys = built if factor.is_constant() else divide_time(built, factor)
    ref = sys.P if sys.P else sys.Q
    tgt = P if sys.P else Q
    c = tgt.leading_coefficient() / ref.leading_coefficient()
    if sys.P * c != P or sys.Q * c != Q:
        raise ValueError("constructed system does not match the displayed one")
    return PlanarSystem(P, Q, sys.scale * c, sys.time_factor)
