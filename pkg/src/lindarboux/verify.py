"""Exact certification of invariant curves and Darboux objects."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .algebra import ZERO, Poly2, RatFn, poly_divexact, poly_divmod, univariate_gcd
from .construct import DarbouxLogDeriv, PlanarSystem
from .errors import NotDivisible, WrongShape

__all__ = [
    "InvariantCertificate",
    "invariant_poly_check",
    "invariant_darboux_check",
    "degree_bound_check",
    "Irreducibility",
    "IrreducibilityResult",
    "quadratic_in_v_irreducibility",
    "poly_sqrt",
]


@dataclass(frozen=True)
class InvariantCertificate:
    candidate: Union[Poly2, DarbouxLogDeriv]
    cofactor: Poly2
    passed: bool
    residual: Union[Poly2, RatFn]
    degree_ok: bool = True

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        if isinstance(self.candidate, Poly2):
            cand = str(self.candidate)
        else:
            cand = self.candidate.to_json()
        if isinstance(self.residual, RatFn):
            res = {"num": str(self.residual.num), "den": str(self.residual.den)}
        else:
            res = str(self.residual)
        return {
            "candidate": cand,
            "cofactor": str(self.cofactor),
            "verdict": self.verdict,
            "residual": res,
        }


def invariant_poly_check(sys: PlanarSystem, f: Poly2) -> InvariantCertificate:
    """Decide ``P*f_x + Q*f_y == k*f`` with ``deg k <= d - 1``."""
    if not f:
        raise ValueError("candidate must be nonzero")
    r = sys.lie(f)
    try:
        k = poly_divexact(r, f)
    except NotDivisible:
        _, rem = poly_divmod(r, f)
        return InvariantCertificate(f, ZERO, False, r if not rem else rem, False)
    assert k * f == r
    ok = k.degree <= sys.d - 1
    return InvariantCertificate(f, k, ok, ZERO if ok else r, ok)


def invariant_darboux_check(sys: PlanarSystem, L: DarbouxLogDeriv) -> InvariantCertificate:
    """The cofactor of a Darboux object is ``P*Lx + Q*Ly``; it must be a polynomial."""
    r = RatFn(sys.P) * L.Lx + RatFn(sys.Q) * L.Ly
    try:
        k = r.as_poly()
    except NotDivisible:
        return InvariantCertificate(L, ZERO, False, r, False)
    ok = k.degree <= sys.d - 1
    return InvariantCertificate(L, k, ok, RatFn(ZERO) if ok else r, ok)


def degree_bound_check(cert: InvariantCertificate, sys: PlanarSystem) -> bool:
    return cert.cofactor.degree <= sys.d - 1


class Irreducibility(Enum):
    IRREDUCIBLE = "IrreducibleByCriterion"
    INCONCLUSIVE = "Inconclusive"
    REDUCIBLE = "ReducibleWitness"


@dataclass(frozen=True)
class IrreducibilityResult:
    outcome: Irreducibility
    discriminant: Poly2
    reason: str
    witness: Optional[Poly2] = None


def poly_sqrt(p: Poly2) -> Optional[Poly2]:
    """Exact square root over the rationals of a univariate polynomial, or None."""
    if not p:
        return ZERO
    var = "y" if "y" in p.variables() else "x"
    c = p.to_univariate(var)
    n = len(c) - 1
    if n % 2:
        return None
    lc = c[-1]
    if lc < 0:
        return None
    root_lc = _rational_sqrt(lc)
    if root_lc is None:
        return None
    # trailing coefficient test
    low = next(k for k, v in enumerate(c) if v)
    if low % 2 or c[low] < 0 or _rational_sqrt(c[low]) is None:
        return None
    m = n // 2
    s = [0] * (m + 1)
    s[m] = root_lc
    # match coefficients from the top: c[n-k] = sum_{i+j=n-k} s_i s_j
    for k in range(1, m + 1):
        total = sum(s[i] * s[n - k - i] for i in range(m - k + 1, m))
        s[m - k] = (c[n - k] - total) / (2 * s[m])
    root = Poly2.univariate(s, var)
    return root if root * root == p else None


def _rational_sqrt(q):
    from fractions import Fraction
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _is_real_square(disc: Poly2) -> tuple:
    """Decide whether ``disc`` is the square of a real polynomial.

    Returns ``(is_square, root_or_None, reason)``.  A monic rational
    polynomial that is a square over the reals has a rational square root,
    so the test is exact.
    """
    if not disc:
        return True, ZERO, "discriminant is zero"
    if disc.degree % 2:
        return False, None, "discriminant has odd degree"
    lc = disc.leading_coefficient()
    if lc < 0:
        return False, None, "discriminant has negative leading coefficient"
    monic = disc / lc
    root = poly_sqrt(monic)
    if root is None:
        return False, None, "exact square root fails"
    return True, root, "discriminant is a square"


def quadratic_in_v_irreducibility(f: Poly2, var: str = "y") -> IrreducibilityResult:
    """Discriminant/gcd criterion for ``f = c2*v^2 + c1*v + c0`` in ``v = var``.

    Irreducible over the reals when the discriminant is not a square and
    ``gcd(c2, c0)`` is constant.  Reducible when the discriminant is a square
    or the three coefficients share a factor.  Otherwise inconclusive.
    """
    if f.degree_in(var) != 2:
        raise WrongShape(f"degree in {var} is {f.degree_in(var)}, expected 2")
    parts = f.coefficients_in(var)
    c2, c1, c0 = parts.get(2, ZERO), parts.get(1, ZERO), parts.get(0, ZERO)
    disc = c1 * c1 - c2 * c0 * 4
    content = univariate_gcd(univariate_gcd(c2, c1), c0) if c0 or c1 else c2.monic()
    if not content.is_constant():
        return IrreducibilityResult(Irreducibility.REDUCIBLE, disc, "coefficients share a factor", content)
    square, root, reason = _is_real_square(disc)
    if square:
        return IrreducibilityResult(Irreducibility.REDUCIBLE, disc, reason, root)
    g = univariate_gcd(c2, c0) if c0 else c2.monic()
    if g.is_constant():
        return IrreducibilityResult(Irreducibility.IRREDUCIBLE, disc, reason)
    return IrreducibilityResult(
        Irreducibility.INCONCLUSIVE, disc, f"{reason}; gcd(c2, c0) = {g} is not constant", g
    )
