"""Quadratic systems with invariant curves linear in ``y`` (Hermite, Laguerre, Jacobi).

The system is ``x' = Om(x)``, ``y' = (2n+1) L' Om - n(n+1)/2 Om Om'' - L^2 + y^2``
with ``Om`` one of the normal forms ``1``, ``x``, ``1 - x^2`` and ``L`` linear.
It comes from ``Om w'' + (Om' - 2L) w' + n/2 (4L' - (n+1) Om'') w = 0`` and the
change ``g = (L - y)/Om``; the raw construction carries an extra factor ``Om``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from ..algebra import ONE, X, Y, Poly2
from ..construct import ChangeOfVar, LinearODE2, PlanarSystem, build_second_order
from ..errors import DomainError, LinearDependence, NoPolynomialSolution
from ..special import hyp1f1, hyp2f1, rgamma
from .common import FirstIntegralEvaluator, FundamentalPair, _ratio, as_fraction, conform, require

__all__ = [
    "OrthFamilySpec",
    "orth_ode",
    "orth_change",
    "orth_system",
    "polynomial_solutions",
    "orthpoly_solve",
    "algcurve_linear_y",
    "orth_pair",
    "orth_theorem_H",
    "orthfam_H_eval",
]

HERMITE, LAGUERRE, JACOBI = "hermite", "laguerre", "jacobi"


@dataclass(frozen=True)
class OrthFamilySpec:
    Omega1: Poly2
    L: Poly2
    n: Fraction

    def __post_init__(self):
        object.__setattr__(self, "Omega1", Poly2.coerce(self.Omega1))
        object.__setattr__(self, "L", Poly2.coerce(self.L))
        object.__setattr__(self, "n", as_fraction(self.n))
        require(bool(self.Omega1), "Omega1 != 0")
        require(self.Omega1.degree_in("y") <= 0 and self.L.degree_in("y") <= 0, "Omega1, L free of y")
        require(self.Omega1.degree <= 2, "deg Omega1 <= 2")
        require(self.L.degree <= 1, "deg L <= 1")

    @classmethod
    def hermite(cls, n) -> "OrthFamilySpec":
        return cls(ONE, X, n)

    @classmethod
    def laguerre(cls, alpha, n) -> "OrthFamilySpec":
        alpha = as_fraction(alpha)
        return cls(X, (X - alpha) / 2, n)

    @classmethod
    def jacobi(cls, alpha, beta, n) -> "OrthFamilySpec":
        alpha, beta = as_fraction(alpha), as_fraction(beta)
        return cls(ONE - X * X, (X * (alpha + beta) + (alpha - beta)) / 2, n)

    @property
    def kind(self) -> Optional[str]:
        if self.Omega1 == ONE:
            return HERMITE
        if self.Omega1 == X:
            return LAGUERRE
        if self.Omega1 == ONE - X * X:
            return JACOBI
        return None

    @property
    def alpha(self) -> Optional[Fraction]:
        k = self.kind
        if k == LAGUERRE:
            return -2 * self.L.coeff(0, 0)
        if k == JACOBI:
            return self.L.coeff(1, 0) + self.L.coeff(0, 0)
        return None

    @property
    def beta(self) -> Optional[Fraction]:
        if self.kind == JACOBI:
            return self.L.coeff(1, 0) - self.L.coeff(0, 0)
        return None

    def closed_form_ready(self) -> bool:
        """True when ``L`` is the normal form that the closed-form pairs assume."""
        k = self.kind
        if k == HERMITE:
            return self.L == X
        if k == LAGUERRE:
            return self.L.coeff(1, 0) == Fraction(1, 2)
        return k == JACOBI


def orth_ode(spec: OrthFamilySpec) -> LinearODE2:
    Om, L, n = spec.Omega1, spec.L, spec.n
    A2 = Om
    A1 = Om.diff("x") - L * 2
    A0 = (L.diff("x") * 4 - Om.diff("x").diff("x") * (n + 1)) * (n / 2)
    return LinearODE2(A0, A1, A2)


def orth_change(spec: OrthFamilySpec) -> ChangeOfVar:
    return ChangeOfVar(spec.L - Y, spec.Omega1)


def orth_system(spec: OrthFamilySpec) -> PlanarSystem:
    """The displayed system, with its relation to the raw construction recorded."""
    Om, L, n = spec.Omega1, spec.L, spec.n
    P = Om
    Q = L.diff("x") * Om * (2 * n + 1) - Om * Om.diff("x").diff("x") * (n * (n + 1) / 2) - L * L + Y * Y
    built = build_second_order(orth_ode(spec), orth_change(spec))
    return conform(built, Om, P, Q)


# -- exact polynomial solutions -------------------------------------------------

def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right nullspace by exact Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def polynomial_solutions(ode: LinearODE2, max_degree: int) -> List[Poly2]:
    """Basis of the polynomial solutions of degree ``<= max_degree``."""
    cols = [ode.residual(Poly2.monomial(k, 0)) for k in range(max_degree + 1)]
    top = max((c.degree_in("x") for c in cols), default=0)
    rows = [[c.coeff(i, 0) for c in cols] for i in range(top + 1)]
    return [Poly2.univariate(v) for v in _nullspace(rows, max_degree + 1)]


def orthpoly_solve(spec: OrthFamilySpec) -> Poly2:
    """Degree-``n`` polynomial solution from the coefficient ansatz, integer-primitive."""
    n = spec.n
    if n.denominator != 1 or n < 0:
        raise NoPolynomialSolution(f"n = {n} is not a natural number")
    n = int(n)
    basis = polynomial_solutions(orth_ode(spec), n)
    top = [b for b in basis if b.degree == n]
    if not top:
        raise NoPolynomialSolution(f"no solution of exact degree {n}")
    # Gauss-Jordan basis vectors are reduced; the one owning the x^n column
    # has no lower-degree free components
    return top[-1].primitive()


def algcurve_linear_y(spec: OrthFamilySpec, p1: Poly2) -> Tuple[Poly2, Poly2]:
    """``f = p1*y + Om*p1' - L*p1`` and its cofactor ``y + L``."""
    f = p1 * Y + spec.Omega1 * p1.diff("x") - spec.L * p1
    return f, Y + spec.L


# -- numeric first integrals -----------------------------------------------------

def _is_integer(v: float) -> bool:
    return float(v).is_integer()


def _hermite_blocks(n: float):
    """Even and odd solutions ``E = 1F1(-n/2; 1/2; x^2)``, ``O = x 1F1((1-n)/2; 3/2; x^2)``."""

    def E(x):
        return hyp1f1(-n / 2, 0.5, x * x)[0].value

    def dE(x):
        return 2 * x * hyp1f1(-n / 2, 0.5, x * x)[1].value

    def O(x):
        return x * hyp1f1((1 - n) / 2, 1.5, x * x)[0].value

    def dO(x):
        v, d = hyp1f1((1 - n) / 2, 1.5, x * x)
        return v.value + 2 * x * x * d.value

    return E, dE, O, dO


def orth_pair(spec: OrthFamilySpec) -> FundamentalPair:
    """Fundamental pair of the normal-form equation (float evaluators)."""
    if not spec.closed_form_ready():
        raise DomainError("closed-form pairs need the normal-form L")
    k = spec.kind
    n = float(spec.n)
    if k == HERMITE:
        E, dE, O, dO = _hermite_blocks(n)
        ra, rb = rgamma((1 - n) / 2), rgamma(-n / 2)
        if ra == 0.0 or rb == 0.0:
            # integer n: the displayed pair collapses; use the two parity blocks,
            # terminating one first
            if ra == 0.0:
                return FundamentalPair("hermite-blocks", {"n": n}, O, dO, E, dE)
            return FundamentalPair("hermite-blocks", {"n": n}, E, dE, O, dO)
        K = 2.0**n * math.sqrt(math.pi)
        return FundamentalPair(
            "hermite",
            {"n": n},
            lambda x: K * (ra * E(x) - 2 * rb * O(x)),
            lambda x: K * (ra * dE(x) - 2 * rb * dO(x)),
            lambda x: K * (ra * E(x) + 2 * rb * O(x)),
            lambda x: K * (ra * dE(x) + 2 * rb * dO(x)),
        )
    if k == LAGUERRE:
        a = float(spec.alpha)
        if _is_integer(a):
            raise LinearDependence(f"alpha = {a} is an integer; the pair degenerates")

        def w1(x):
            return hyp1f1(-n, a + 1, x)[0].value

        def dw1(x):
            return hyp1f1(-n, a + 1, x)[1].value

        def w2(x):
            _dom_pos(x)
            return x**-a * hyp1f1(-a - n, 1 - a, x)[0].value

        def dw2(x):
            _dom_pos(x)
            v, d = hyp1f1(-a - n, 1 - a, x)
            return x**-a * (d.value - a * v.value / x)

        return FundamentalPair("laguerre", {"n": n, "alpha": a}, w1, dw1, w2, dw2)
    a, b = float(spec.alpha), float(spec.beta)
    if _is_integer(a):
        raise LinearDependence(f"alpha = {a} is an integer; the pair degenerates")

    def v1(x):
        return hyp2f1(-n, 1 + a + b + n, a + 1, (1 - x) / 2)

    def v2(x):
        _dom_pos(1 - x)
        return hyp2f1(-a - n, 1 + b + n, 1 - a, (1 - x) / 2)

    def w1(x):
        return v1(x)[0].value

    def dw1(x):
        return -0.5 * v1(x)[1].value

    def w2(x):
        return (1 - x) ** -a * v2(x)[0].value

    def dw2(x):
        v, d = v2(x)
        return (1 - x) ** -a * (a * v.value / (1 - x) - 0.5 * d.value)

    return FundamentalPair("jacobi", {"n": n, "alpha": a, "beta": b}, w1, dw1, w2, dw2)


def _dom_pos(v: float) -> None:
    if v <= 0:
        raise DomainError(f"argument {v} outside the real branch")


def orth_theorem_H(spec: OrthFamilySpec) -> FirstIntegralEvaluator:
    """``H = f1/f2`` built from the fundamental pair and ``g = (L - y)/Om``."""
    return FirstIntegralEvaluator(f"orth-{spec.kind}-theorem", orth_pair(spec), orth_change(spec))


def _hermite_display(n: float, x: float, y: float) -> float:
    a, b = (1 - n) / 2, -n / 2
    X2 = x * x
    B1 = 6 * (x * y - X2 + 1) * hyp1f1(a, 1.5, X2)[0].value - 4 * (n - 1) * X2 * hyp1f1((3 - n) / 2, 2.5, X2)[0].value
    B2 = 2 * n * x * hyp1f1(1 - n / 2, 1.5, X2)[0].value + (x - y) * hyp1f1(b, 0.5, X2)[0].value
    ra, rb = rgamma(a), rgamma(b)
    if ra == 0.0 or rb == 0.0:
        # the +/- pair is degenerate at integer n; the two blocks remain a first integral
        return _ratio(B1, B2)
    # divide both displays by Gamma(a)*Gamma(b) so no Gamma value is formed at a pole
    return _ratio(rb * B1 + 3 * ra * B2, -rb * B1 + 3 * ra * B2)


def _laguerre_display(n: float, a: float, x: float, y: float) -> float:
    _dom_pos(x)
    s = 2 * y - x
    h1 = (s + a) * (a + 1) * hyp1f1(-n, a + 1, x)[0].value - 2 * n * x * hyp1f1(1 - n, a + 2, x)[0].value
    h2 = (s - a) * (a - 1) * hyp1f1(-a - n, 1 - a, x)[0].value + 2 * (a + n) * x * hyp1f1(1 - a - n, 2 - a, x)[0].value
    return x**a * _ratio(h1, h2)


def _jacobi_display(n: float, a: float, b: float, x: float, y: float) -> float:
    _dom_pos(1 - x)
    s = (1 - x) / 2
    h1 = n * (1 + a + b + n) * (x * x - 1) * hyp2f1(1 - n, 2 + a + b + n, 2 + a, s)[0].value + (a + 1) * (
        (a + b) * x + (a - b) - 2 * y
    ) * hyp2f1(-n, 1 + a + b + n, 1 + a, s)[0].value
    h2 = (a - 1) * ((a - b) * x + (a + b) + 2 * y) * hyp2f1(-a - n, 1 + b + n, 1 - a, s)[0].value + (a + n) * (
        1 + b + n
    ) * (x * x - 1) * hyp2f1(1 - a - n, 2 + b + n, 2 - a, s)[0].value
    return (1 - x) ** a * _ratio(h1, h2)


def orthfam_H_eval(spec: OrthFamilySpec, x: float, y: float) -> float:
    """Closed-form first integral of the family (defined up to a constant factor)."""
    if not spec.closed_form_ready():
        raise DomainError("closed-form first integral needs the normal-form L")
    n = float(spec.n)
    k = spec.kind
    if k == HERMITE:
        return _hermite_display(n, x, y)
    if k == LAGUERRE:
        return _laguerre_display(n, float(spec.alpha), x, y)
    return _jacobi_display(n, float(spec.alpha), float(spec.beta), x, y)


def orth_display_H(spec: OrthFamilySpec) -> FirstIntegralEvaluator:
    return FirstIntegralEvaluator(
        f"orth-{spec.kind}-display",
        formula=lambda x, y: orthfam_H_eval(spec, x, y),
    )


__all__ += ["orth_display_H", "HERMITE", "LAGUERRE", "JACOBI"]
