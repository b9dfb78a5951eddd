"""From a linear ODE and a change of variable ``w' = g(x, y) w`` to a planar system.

Convention used throughout the package: ``f`` is invariant for
``x' = P, y' = Q`` when ``P*f_x + Q*f_y == k*f`` for a polynomial ``k``.

The ``build_*`` functions divide ``(P, Q)`` by their shared rational content
and fix the sign so that the leading coefficient of ``P`` is positive.
Every predicted cofactor is multiplied by the same factor, so certificates
stay aligned with the returned system.  Division by a non-constant common
factor is never automatic; use :func:`divide_time`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Tuple

from .algebra import ONE, ZERO, Poly2, RatFn, poly_divexact, shared_content
from .errors import DegenerateChange

__all__ = [
    "LinearODE2",
    "LinearODE1",
    "ChangeOfVar",
    "PlanarSystem",
    "DarbouxLogDeriv",
    "ExactVerdict",
    "build_second_order",
    "build_first_order",
    "predicted_cofactor_2nd",
    "predicted_cofactor_1st",
    "q_object_2nd",
    "q_object_1st",
    "iif_logderiv_1st",
    "iif_divergence_check",
    "divide_time",
    "invariant_from_solution",
]


def _require_univariate_x(name: str, p: Poly2) -> None:
    if p.degree_in("y") > 0:
        raise ValueError(f"{name} must not depend on y")


@dataclass(frozen=True)
class LinearODE2:
    """``A2 w'' + A1 w' + A0 w = 0`` with polynomial coefficients in ``x``."""

    A0: Poly2
    A1: Poly2
    A2: Poly2

    def __post_init__(self):
        for name in ("A0", "A1", "A2"):
            object.__setattr__(self, name, Poly2.coerce(getattr(self, name)))
            _require_univariate_x(name, getattr(self, name))
        if not self.A2:
            raise ValueError("A2 must be nonzero")

    def residual(self, w: Poly2) -> Poly2:
        return self.A2 * w.diff("x").diff("x") + self.A1 * w.diff("x") + self.A0 * w


@dataclass(frozen=True)
class LinearODE1:
    """``w' + (A0/A1) w = 0`` together with the forcing term ``h = h0/h1``."""

    A0: Poly2
    A1: Poly2
    h0: Poly2
    h1: Poly2

    def __post_init__(self):
        for name in ("A0", "A1", "h0", "h1"):
            object.__setattr__(self, name, Poly2.coerce(getattr(self, name)))
            _require_univariate_x(name, getattr(self, name))
        if not self.A1:
            raise ValueError("A1 must be nonzero")
        if not self.h1:
            raise ValueError("h1 must be nonzero")


@dataclass(frozen=True)
class ChangeOfVar:
    """``g = g0 / g1`` with ``dg/dy`` not identically zero."""

    g0: Poly2
    g1: Poly2 = ONE

    def __post_init__(self):
        object.__setattr__(self, "g0", Poly2.coerce(self.g0))
        object.__setattr__(self, "g1", Poly2.coerce(self.g1))
        if not self.g1:
            raise DegenerateChange("g1 must be nonzero")
        if not self.y_wronskian():
            raise DegenerateChange("dg/dy vanishes identically")

    def y_wronskian(self) -> Poly2:
        """``g1*dg0/dy - g0*dg1/dy`` (numerator of dg/dy)."""
        return self.g1 * self.g0.diff("y") - self.g0 * self.g1.diff("y")


@dataclass(frozen=True)
class PlanarSystem:
    """``x' = P(x, y), y' = Q(x, y)``.

    ``scale`` and ``time_factor`` record how the system relates to the raw
    construction: ``(P, Q) == scale * (P_raw, Q_raw) / time_factor``.
    """

    P: Poly2
    Q: Poly2
    scale: Fraction = Fraction(1)
    time_factor: Poly2 = ONE

    def __post_init__(self):
        object.__setattr__(self, "P", Poly2.coerce(self.P))
        object.__setattr__(self, "Q", Poly2.coerce(self.Q))
        if not self.P and not self.Q:
            raise ValueError("P and Q are both zero")

    @property
    def d(self) -> int:
        return max(self.P.degree, self.Q.degree)

    degree = d

    def divergence(self) -> Poly2:
        return self.P.diff("x") + self.Q.diff("y")

    def lie(self, f: Poly2) -> Poly2:
        """``P*f_x + Q*f_y``."""
        return self.P * f.diff("x") + self.Q * f.diff("y")

    def align_cofactor(self, raw: Poly2) -> Poly2:
        """Map a cofactor of the raw construction onto this system."""
        return poly_divexact(raw * self.scale, self.time_factor)

    def vector_field(self) -> Callable[[float, float], Tuple[float, float]]:
        fp, fq = self.P.float_fn(), self.Q.float_fn()

        def rhs(x: float, y: float) -> Tuple[float, float]:
            return fp(x, y), fq(x, y)

        return rhs

    def to_json(self) -> dict:
        return {"P": str(self.P), "Q": str(self.Q), "degree": self.d}


def normalize_content(P: Poly2, Q: Poly2) -> Tuple[Poly2, Poly2, Fraction]:
    """Divide by the shared rational content; make lc(P) positive."""
    c = shared_content(P, Q)
    s = 1 / c
    lead = P if P else Q
    if lead.leading_coefficient() * s < 0:
        s = -s
    return P * s, Q * s, s


def divide_time(sys: PlanarSystem, factor: Poly2) -> PlanarSystem:
    """Divide both components by ``factor``; both divisions must be exact."""
    factor = Poly2.coerce(factor)
    P = poly_divexact(sys.P, factor)
    Q = poly_divexact(sys.Q, factor)
    return PlanarSystem(P, Q, sys.scale, sys.time_factor * factor)


@dataclass(frozen=True)
class DarbouxLogDeriv:
    """Rational 1-form ``Lx dx + Ly dy`` standing for ``d log F``."""

    Lx: RatFn
    Ly: RatFn = field(default_factory=lambda: RatFn(ZERO))

    def __post_init__(self):
        object.__setattr__(self, "Lx", RatFn.coerce(self.Lx))
        object.__setattr__(self, "Ly", RatFn.coerce(self.Ly))

    def __add__(self, other: "DarbouxLogDeriv") -> "DarbouxLogDeriv":
        return DarbouxLogDeriv(self.Lx + other.Lx, self.Ly + other.Ly)

    def __sub__(self, other: "DarbouxLogDeriv") -> "DarbouxLogDeriv":
        return DarbouxLogDeriv(self.Lx - other.Lx, self.Ly - other.Ly)

    def __mul__(self, s) -> "DarbouxLogDeriv":
        """Scaling the 1-form is raising ``F`` to a power."""
        return DarbouxLogDeriv(self.Lx * s, self.Ly * s)

    __rmul__ = __mul__

    @classmethod
    def of_poly(cls, f: Poly2, power=1) -> "DarbouxLogDeriv":
        """``d log f**power``."""
        return cls(RatFn(f.diff("x") * power, f), RatFn(f.diff("y") * power, f))

    @classmethod
    def of_exp(cls, h: Poly2, g: Poly2 = ONE) -> "DarbouxLogDeriv":
        """``d (h/g)`` for the exponential factor ``exp(h/g)``."""
        r = RatFn(h, g)
        return cls(r.diff("x"), r.diff("y"))

    def to_json(self) -> dict:
        from .exprparse import format_ratfn

        return {"Lx": format_ratfn(self.Lx), "Ly": format_ratfn(self.Ly)}


@dataclass(frozen=True)
class ExactVerdict:
    passed: bool
    residual: Poly2

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


# -- second order ------------------------------------------------------------

def _raw_second_order(ode: LinearODE2, g: ChangeOfVar) -> Tuple[Poly2, Poly2]:
    A0, A1, A2 = ode.A0, ode.A1, ode.A2
    g0, g1 = g.g0, g.g1
    Q = (
        A0 * g1 * g1
        + A1 * g1 * g0
        + A2 * g0 * g0
        + A2 * (g1 * g0.diff("x") - g0 * g1.diff("x"))
    )
    P = A2 * (g0 * g1.diff("y") - g1 * g0.diff("y"))
    return P, Q


def build_second_order(ode: LinearODE2, g: ChangeOfVar) -> PlanarSystem:
    P, Q = _raw_second_order(ode, g)
    if not P:
        raise DegenerateChange("P vanishes identically")
    P, Q, s = normalize_content(P, Q)
    return PlanarSystem(P, Q, s)


def _raw_cofactor_2nd(ode: LinearODE2, g: ChangeOfVar) -> Poly2:
    A0, A1, A2 = ode.A0, ode.A1, ode.A2
    g0, g1 = g.g0, g.g1
    g0x, g0y = g0.diff("x"), g0.diff("y")
    g1x, g1y = g1.diff("x"), g1.diff("y")
    return (A0 * g1y + A1 * g0y) * g1 + A2 * g0 * g0y + A2 * (g1y * g0x - g0y * g1x)


def predicted_cofactor_2nd(ode: LinearODE2, g: ChangeOfVar) -> Poly2:
    """Cofactor of ``g1*w' - g0*w`` for any solution ``w``, on the built system."""
    sys = build_second_order(ode, g)
    return sys.align_cofactor(_raw_cofactor_2nd(ode, g))


def invariant_from_solution(g: ChangeOfVar, w: Poly2) -> Poly2:
    """``g1*w' - g0*w`` for a polynomial solution ``w(x)``."""
    return g.g1 * w.diff("x") - g.g0 * w


def q_object_2nd(ode: LinearODE2, g: ChangeOfVar) -> Tuple[DarbouxLogDeriv, Poly2]:
    """Log-derivative of ``q = A2*exp(int A1/A2)`` and its cofactor on the built system."""
    s = ode.A1 + ode.A2.diff("x")
    L = DarbouxLogDeriv(RatFn(s, ode.A2))
    raw = s * (g.g0 * g.g1.diff("y") - g.g1 * g.g0.diff("y"))
    sys = build_second_order(ode, g)
    return L, sys.align_cofactor(raw)


# -- first order -------------------------------------------------------------

def _raw_first_order(ode: LinearODE1, g: ChangeOfVar) -> Tuple[Poly2, Poly2]:
    A0, A1, h0, h1 = ode.A0, ode.A1, ode.h0, ode.h1
    g0, g1 = g.g0, g.g1
    Q = A1 * h0 * g1 * g1 - A0 * h1 * g0 * g1 - A1 * h1 * (g1 * g0.diff("x") - g0 * g1.diff("x"))
    P = A1 * h1 * (g1 * g0.diff("y") - g0 * g1.diff("y"))
    return P, Q


def build_first_order(ode: LinearODE1, g: ChangeOfVar) -> PlanarSystem:
    P, Q = _raw_first_order(ode, g)
    if not P:
        raise DegenerateChange("P vanishes identically")
    P, Q, s = normalize_content(P, Q)
    return PlanarSystem(P, Q, s)


def _raw_cofactor_1st(ode: LinearODE1, g: ChangeOfVar) -> Poly2:
    A0, A1, h0, h1 = ode.A0, ode.A1, ode.h0, ode.h1
    g0, g1 = g.g0, g.g1
    g0x, g0y = g0.diff("x"), g0.diff("y")
    g1x, g1y = g1.diff("x"), g1.diff("y")
    return -A0 * h1 * g1 * g0y + A1 * h0 * g1 * g1y + A1 * h1 * (g0y * g1x - g1y * g0x)


def predicted_cofactor_1st(ode: LinearODE1, g: ChangeOfVar) -> Poly2:
    sys = build_first_order(ode, g)
    return sys.align_cofactor(_raw_cofactor_1st(ode, g))


def q_object_1st(ode: LinearODE1, g: ChangeOfVar) -> DarbouxLogDeriv:
    """Log-derivative of ``q = g1 * exp(-int A)``; same cofactor as the invariant ``f``."""
    return DarbouxLogDeriv.of_poly(g.g1) + DarbouxLogDeriv(-RatFn(ode.A0, ode.A1))


def iif_logderiv_1st(ode: LinearODE1, g: ChangeOfVar) -> DarbouxLogDeriv:
    """Log-derivative of ``V = A1*h1*g1*q`` (inverse integrating factor)."""
    return DarbouxLogDeriv.of_poly(ode.A1 * ode.h1) + DarbouxLogDeriv.of_poly(g.g1) + q_object_1st(ode, g)


def iif_divergence_check(sys: PlanarSystem, kV: Poly2) -> ExactVerdict:
    """``V`` with cofactor ``kV`` is an inverse integrating factor iff ``kV == div``."""
    residual = sys.divergence() - kV
    return ExactVerdict(not residual, residual)
