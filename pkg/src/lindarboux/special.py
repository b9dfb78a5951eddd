"""Double-precision special functions: Gamma, Pochhammer, 1F1, 2F1, I_nu.

``est_relerr`` is a truncation estimate (last term over partial sum, plus a
rounding term scaled by the cancellation ratio); it is not a rigorous bound.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import DomainError, NoConvergence, Pole

__all__ = [
    "SpecialValue",
    "gamma",
    "rgamma",
    "pochhammer",
    "hyp1f1",
    "hyp2f1",
    "bessel_i",
    "bessel_i_series",
    "bessel_i_deriv",
    "half_integer_bessel_polys",
    "is_nonpositive_integer",
]

_EPS = 2.220446049250313e-16
_MAX_TERMS = 500
_REL_STOP = 1e-17

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class SpecialValue:
    value: float
    est_relerr: float = 0.0

    def __float__(self) -> float:
        return self.value


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _sinpi(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r < 0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return 1.0
    if r == 1.5:
        return -1.0
    return math.sin(math.pi * r)


def _lanczos(x: float) -> float:
    # Gamma(x) for x >= 0.5
    x -= 1.0
    a = _LANCZOS[0]
    for i in range(1, 9):
        a += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    if x < 140:
        return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * a
    return math.exp(0.5 * math.log(2 * math.pi) + (x + 0.5) * math.log(t) - t + math.log(a))


def gamma(x: float) -> SpecialValue:
    """Gamma function; raises :class:`Pole` at 0, -1, -2, ..."""
    x = float(x)
    if is_nonpositive_integer(x):
        raise Pole(x)
    if x < 0.5:
        v = math.pi / (_sinpi(x) * _lanczos(1.0 - x))
    else:
        v = _lanczos(x)
    return SpecialValue(v, 1e-15 * max(1.0, abs(x)))


def rgamma(x: float) -> float:
    """``1/Gamma(x)``, exactly zero at the poles."""
    try:
        return 1.0 / gamma(x).value
    except Pole:
        return 0.0


def pochhammer(a: float, k: int) -> float:
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def _hyp_series(num: Sequence[float], den: Sequence[float], x: float) -> SpecialValue:
    for b in den:
        if is_nonpositive_integer(b):
            raise Pole(b)
    terminating = any(is_nonpositive_integer(a) for a in num)
    term = 1.0
    total = 1.0
    absum = 1.0
    small = 0
    k = 0
    while True:
        ratio = x / (k + 1)
        for a in num:
            ratio *= a + k
        for b in den:
            ratio /= b + k
        term *= ratio
        k += 1
        total += term
        absum += abs(term)
        if term == 0.0 and terminating:
            return SpecialValue(total, _EPS * absum / max(abs(total), 1e-300))
        if abs(term) <= _REL_STOP * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        if k >= _MAX_TERMS:
            rel = abs(term) / max(abs(total), 1e-300)
            if rel > 1e-8:
                raise NoConvergence(f"series did not converge after {k} terms (last/sum = {rel:.3g})")
            return SpecialValue(total, rel + _EPS * absum / max(abs(total), 1e-300))
    rel = abs(term) / max(abs(total), 1e-300)
    return SpecialValue(total, rel + _EPS * absum / max(abs(total), 1e-300))


def hyp1f1(a: float, b: float, x: float) -> Tuple[SpecialValue, SpecialValue]:
    """Kummer's ``1F1(a; b; x)`` and its derivative in ``x``."""
    v = _hyp_series((a,), (b,), x)
    if a == 0:
        return v, SpecialValue(0.0)
    d = _hyp_series((a + 1,), (b + 1,), x)
    f = a / b
    return v, SpecialValue(f * d.value, d.est_relerr)


def hyp2f1(a1: float, a2: float, b: float, x: float) -> Tuple[SpecialValue, SpecialValue]:
    """Gauss ``2F1(a1, a2; b; x)`` and its derivative; ``|x| <= 0.95`` unless terminating."""
    terminating = is_nonpositive_integer(a1) or is_nonpositive_integer(a2)
    if not terminating and abs(x) > 0.95:
        raise DomainError(f"2F1 argument |{x}| > 0.95 for a non-terminating series")
    v = _hyp_series((a1, a2), (b,), x)
    if a1 == 0 or a2 == 0:
        return v, SpecialValue(0.0)
    d = _hyp_series((a1 + 1, a2 + 1), (b + 1,), x)
    f = a1 * a2 / b
    return v, SpecialValue(f * d.value, d.est_relerr)


def _half_integer_order(nu: float):
    """Return ``n = nu - 1/2`` when it is an integer, else None."""
    t = 2.0 * float(nu)
    if t.is_integer() and int(t) % 2:
        return (int(t) - 1) // 2
    return None


@lru_cache(maxsize=None)
def _closed_form_sums(abs_nu2: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Coefficients of the two finite sums for ``|nu| = abs_nu2 / 2``.

    ``S1 = sum_k a_k (2z)^(-2k)`` and ``S2 = sum_k b_k (2z)^(-2k-1)`` with
    factorial ratios whose arguments are integers for half-integer ``nu``.
    Returned as coefficient tuples in powers of ``t = 1/z`` (dense).
    """
    two_nu = abs_nu2
    f = math.factorial
    s1 = {}
    for k in range(0, (two_nu - 1) // 4 + 1):
        top = (two_nu + 4 * k - 1) // 2  # |nu| + 2k - 1/2
        bot = (two_nu - 4 * k - 1) // 2  # |nu| - 2k - 1/2
        s1[2 * k] = Fraction(f(top), f(2 * k) * f(bot) * 2 ** (2 * k))
    s2 = {}
    if two_nu >= 3:
        for k in range(0, (two_nu - 3) // 4 + 1):
            top = (two_nu + 4 * k + 1) // 2  # |nu| + 2k + 1/2
            bot = (two_nu - 4 * k - 3) // 2  # |nu| - 2k - 3/2
            s2[2 * k + 1] = Fraction(f(top), f(2 * k + 1) * f(bot) * 2 ** (2 * k + 1))

    def dense(d):
        if not d:
            return ()
        out = [Fraction(0)] * (max(d) + 1)
        for e, c in d.items():
            out[e] = c
        return tuple(out)

    return dense(s1), dense(s2)


def half_integer_bessel_polys(nu) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """``(p, q)`` with ``I_nu(z) = sqrt(2/(pi z)) * (p(1/z) sinh z + q(1/z) cosh z)``.

    Valid for ``nu - 1/2`` an integer.  Coefficients are exact rationals in
    ascending powers of ``1/z``.
    """
    n = _half_integer_order(nu)
    if n is None:
        raise ValueError(f"order {nu} is not a half-integer")
    s1, s2 = _closed_form_sums(abs(2 * n + 1))
    neg_s2 = tuple(-c for c in s2)
    if n % 2 == 0:
        return s1, neg_s2
    return neg_s2, s1


_DEC_PREC = 40


def _dec_poly(coeffs: Sequence[Fraction], t: decimal.Decimal) -> decimal.Decimal:
    acc = decimal.Decimal(0)
    for c in reversed(coeffs):
        acc = acc * t + decimal.Decimal(c.numerator) / decimal.Decimal(c.denominator)
    return acc


def _bessel_half(nu: float, z: float) -> SpecialValue:
    """The sinh/cosh closed form.

    The two products cancel heavily for small ``z``, so the combination is
    formed in 40-digit decimal arithmetic and rounded once at the end.
    """
    p, q = half_integer_bessel_polys(nu)
    with decimal.localcontext() as ctx:
        ctx.prec = _DEC_PREC
        zd = decimal.Decimal(z)
        t = 1 / zd
        e = zd.exp()
        sh, ch = (e - 1 / e) / 2, (e + 1 / e) / 2
        sp, sq = _dec_poly(p, t), _dec_poly(q, t)
        comb = sp * sh + sq * ch
        mag = abs(sp) * sh + abs(sq) * ch
        ratio = float(mag / abs(comb)) if comb else math.inf
    pref = math.sqrt(2.0 / (math.pi * z))
    return SpecialValue(pref * float(comb), 2 * _EPS + ratio * 10.0 ** (1 - _DEC_PREC))


def bessel_i_series(nu: float, z: float) -> SpecialValue:
    """Ascending series ``sum (z/2)^(nu+2k) / (k! Gamma(nu+k+1))``."""
    nu = float(nu)
    if z <= 0:
        raise DomainError(f"bessel_i requires z > 0, got {z}")
    if is_nonpositive_integer(nu):
        nu = -nu
    half = 0.5 * z
    term = half**nu * rgamma(nu + 1.0)
    total = term
    absum = abs(term)
    q = half * half
    small = 0
    k = 0
    while True:
        term *= q / ((k + 1) * (nu + k + 1))
        k += 1
        total += term
        absum += abs(term)
        if abs(term) <= _REL_STOP * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        if k >= _MAX_TERMS:
            raise NoConvergence("Bessel series did not converge")
    return SpecialValue(total, abs(term) / abs(total) + _EPS * absum / abs(total))


def bessel_i(nu: float, z: float) -> SpecialValue:
    """Modified Bessel function of the first kind for ``z > 0``.

    Half-integer orders use the finite sinh/cosh closed form with exact
    rational polynomial coefficients; other orders use the ascending series.
    """
    if z <= 0:
        raise DomainError(f"bessel_i requires z > 0, got {z}")
    if _half_integer_order(nu) is not None:
        v = _bessel_half(float(nu), float(z))
        if v.est_relerr < 1e-13:
            return v
        # cancellation beyond the decimal precision (tiny z, positive order)
    return bessel_i_series(nu, z)


def bessel_i_deriv(nu: float, z: float) -> SpecialValue:
    """``d/dz I_nu(z) = (I_{nu-1}(z) + I_{nu+1}(z)) / 2``."""
    a, b = bessel_i(nu - 1, z), bessel_i(nu + 1, z)
    return SpecialValue(0.5 * (a.value + b.value), max(a.est_relerr, b.est_relerr))
