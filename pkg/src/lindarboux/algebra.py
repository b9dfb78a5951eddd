"""Exact arithmetic: rationals, sparse bivariate polynomials, rational functions.

Coefficients are :class:`fractions.Fraction`, which already keeps the
canonical form (reduced, positive denominator, zero as 0/1).

Monomials ``x**i * y**j`` are keyed by ``(i, j)``.  The canonical order is
graded lexicographic with ``x`` before ``y``: higher total degree first,
ties broken by the larger power of ``x``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import NotDivisible

Rational = Fraction
Monomial = Tuple[int, int]
Coeff = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly2",
    "RatFn",
    "X",
    "Y",
    "ONE",
    "ZERO",
    "poly_mul",
    "poly_partial",
    "poly_divexact",
    "ratfn_simplify",
    "univariate_gcd",
    "grlex_key",
]


def grlex_key(m: Monomial) -> Tuple[int, int]:
    return (m[0] + m[1], m[0])


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


class Poly2:
    """Immutable sparse polynomial in ``x`` and ``y`` over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | Iterable[Tuple[Monomial, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Monomial, Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            c = _frac(c)
            if c:
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + c
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly2":
        # trusted constructor: no zero coefficients, all Fractions
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Coeff) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Coeff = 1) -> "Poly2":
        return cls({(i, j): c})

    @classmethod
    def univariate(cls, coeffs: Iterable[Coeff], var: str = "x") -> "Poly2":
        """Build ``sum coeffs[k] * var**k``."""
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(coeffs)})
        if var == "y":
            return cls({(0, k): c for k, c in enumerate(coeffs)})
        raise ValueError(f"unknown variable {var!r}")

    @classmethod
    def coerce(cls, other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        return cls.const(other)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int = 0) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def degree_in(self, var: str) -> int:
        if not self._terms:
            return -1
        k = 0 if var == "x" else 1
        return max(m[k] for m in self._terms)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def variables(self) -> set:
        out = set()
        for i, j in self._terms:
            if i:
                out.add("x")
            if j:
                out.add("y")
        return out

    def sorted_terms(self):
        """Terms in descending canonical (grlex, x > y) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = Poly2.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly2.coerce(other))

    def __rsub__(self, other):
        return Poly2.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                return ZERO
            return Poly2._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly2):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            return Poly2._raw({m: c / other for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly2.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .exprparse import format_poly

        return f"Poly2({format_poly(self)!r})"

    def __str__(self):
        from .exprparse import format_poly

        return format_poly(self)

    # -- calculus / evaluation ---------------------------------------------
    def diff(self, var: str) -> "Poly2":
        return poly_partial(self, var)

    def __call__(self, x, y=0):
        """Evaluate at a point; exact for Fraction/int inputs."""
        total = 0
        for (i, j), c in self._terms.items():
            total += c * x**i * y**j
        return total

    def subs(self, x: "Poly2 | Coeff | None" = None, y: "Poly2 | Coeff | None" = None) -> "Poly2":
        """Substitute polynomials for ``x`` and/or ``y``."""
        X_ = Poly2.coerce(x) if x is not None else X
        Y_ = Poly2.coerce(y) if y is not None else Y
        xp: Dict[int, Poly2] = {}
        yp: Dict[int, Poly2] = {}
        out = ZERO
        for (i, j), c in self._terms.items():
            if i not in xp:
                xp[i] = X_**i
            if j not in yp:
                yp[j] = Y_**j
            out = out + xp[i] * yp[j] * c
        return out

    def float_fn(self) -> Callable[[float, float], float]:
        """Compile to a fast float evaluator."""
        terms = [(i, j, float(c)) for (i, j), c in self._terms.items()]

        def f(x: float, y: float) -> float:
            s = 0.0
            for i, j, c in terms:
                s += c * x**i * y**j
            return s

        return f

    # -- content / normalization -------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive."""
        if not self._terms:
            return Fraction(0)
        return _content(self._terms.values())

    def primitive(self) -> "Poly2":
        """Integer-primitive representative with positive leading coefficient."""
        if not self._terms:
            return self
        p = self / self.content()
        if p.leading_coefficient() < 0:
            p = -p
        return p

    def monic(self) -> "Poly2":
        return self / self.leading_coefficient()

    def monomial_content(self) -> Monomial:
        if not self._terms:
            return (0, 0)
        return (min(i for i, _ in self._terms), min(j for _, j in self._terms))

    def to_univariate(self, var: str = "x") -> list:
        """Dense coefficient list (low to high); raises if the other variable occurs."""
        k = 0 if var == "x" else 1
        other = 1 - k
        if any(m[other] for m in self._terms):
            raise ValueError(f"polynomial is not univariate in {var}")
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.degree_in(var) + 1)
        for m, c in self._terms.items():
            out[m[k]] = c
        return out

    def coefficients_in(self, var: str) -> Dict[int, "Poly2"]:
        """Split as ``sum_k c_k * var**k`` with ``c_k`` free of ``var``."""
        k = 0 if var == "x" else 1
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            rest = (0, m[1]) if k == 0 else (m[0], 0)
            out.setdefault(m[k], {})[rest] = c
        return {e: Poly2._raw(t) for e, t in out.items()}


def _content(coeffs: Iterable[Fraction]) -> Fraction:
    g, l = 0, 1
    for c in coeffs:
        g = gcd(g, c.numerator)
        l = lcm(l, c.denominator)
    return Fraction(g, l)


X = Poly2.monomial(1, 0)
Y = Poly2.monomial(0, 1)
ONE = Poly2.const(1)
ZERO = Poly2()


def shared_content(*polys: Poly2) -> Fraction:
    coeffs = [c for p in polys for _, c in p.items()]
    if not coeffs:
        return Fraction(0)
    return _content(coeffs)


def poly_mul(a: Poly2, b: Poly2) -> Poly2:
    if not a._terms or not b._terms:
        return ZERO
    out: Dict[Monomial, Fraction] = {}
    for (i1, j1), c1 in a._terms.items():
        for (i2, j2), c2 in b._terms.items():
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, 0) + c1 * c2
    return Poly2._raw({m: c for m, c in out.items() if c})


def poly_partial(a: Poly2, var: str) -> Poly2:
    if var == "x":
        return Poly2._raw({(i - 1, j): c * i for (i, j), c in a._terms.items() if i})
    if var == "y":
        return Poly2._raw({(i, j - 1): c * j for (i, j), c in a._terms.items() if j})
    raise ValueError(f"unknown variable {var!r}")


def poly_divmod(a: Poly2, b: Poly2) -> Tuple[Poly2, Poly2]:
    """Multivariate division by a single divisor in the canonical order.

    Terms of the running remainder that the leading monomial of ``b`` does
    not divide are moved to the remainder.
    """
    if not b._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    (bi, bj), bc = b.leading_term()
    q: Dict[Monomial, Fraction] = {}
    rem: Dict[Monomial, Fraction] = {}
    work = dict(a._terms)
    while work:
        m = max(work, key=grlex_key)
        c = work[m]
        if m[0] >= bi and m[1] >= bj:
            t = (m[0] - bi, m[1] - bj)
            f = c / bc
            q[t] = f
            for (i, j), cb in b._terms.items():
                k = (i + t[0], j + t[1])
                s = work.get(k, 0) - f * cb
                if s:
                    work[k] = s
                else:
                    work.pop(k, None)
        else:
            rem[m] = c
            del work[m]
    return Poly2._raw(q), Poly2._raw(rem)


def poly_divexact(a: Poly2, b: Poly2) -> Poly2:
    """Return ``q`` with ``q * b == a``; raise :class:`NotDivisible` otherwise."""
    if not b._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    (bi, bj), bc = b.leading_term()
    q: Dict[Monomial, Fraction] = {}
    work = dict(a._terms)
    while work:
        m = max(work, key=grlex_key)
        if m[0] < bi or m[1] < bj:
            raise NotDivisible(Poly2._raw(work))
        t = (m[0] - bi, m[1] - bj)
        f = work[m] / bc
        q[t] = f
        for (i, j), cb in b._terms.items():
            k = (i + t[0], j + t[1])
            s = work.get(k, 0) - f * cb
            if s:
                work[k] = s
            else:
                work.pop(k, None)
    return Poly2._raw(q)


# -- univariate helpers -----------------------------------------------------

def _uni_var(*polys: Poly2) -> str | None:
    vs = set()
    for p in polys:
        vs |= p.variables()
    if len(vs) > 1:
        return None
    return vs.pop() if vs else "x"


def univariate_gcd(a: Poly2, b: Poly2) -> Poly2:
    """Monic gcd of two polynomials in the same single variable (Euclid over Q)."""
    var = _uni_var(a, b)
    if var is None:
        raise ValueError("univariate_gcd needs polynomials in one common variable")
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return ZERO
    return a.monic()


def _gcd_with_univariate(p: Poly2, u: Poly2) -> Poly2:
    """gcd of an arbitrary ``p`` with ``u`` univariate in a single variable."""
    uv = _uni_var(u)
    if not p:
        return u.monic()
    if u.is_constant() or p.is_constant():
        return ONE
    other = "y" if uv == "x" else "x"
    g = u
    for c in p.coefficients_in(other).values():
        # c is free of `other`, hence univariate in uv (or constant)
        g = univariate_gcd(g, c)
        if g.is_constant():
            return ONE
    return g.monic()


class RatFn:
    """Quotient ``num / den`` of two :class:`Poly2` (``den != 0``)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly2.coerce(num)
        den = ONE if den is None else Poly2.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        return cls(Poly2.coerce(other))

    def simplify(self) -> "RatFn":
        return ratfn_simplify(self)

    def __add__(self, other):
        o = RatFn.coerce(other)
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den).simplify()
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den).simplify()

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFn.coerce(other))

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        o = RatFn.coerce(other)
        return RatFn(self.num * o.num, self.den * o.den).simplify()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFn.coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * o.den, self.den * o.num).simplify()

    def __pow__(self, n: int):
        if n >= 0:
            return RatFn(self.num**n, self.den**n)
        return RatFn(self.den ** (-n), self.num ** (-n))

    def equals(self, other) -> bool:
        """Equality as rational functions (cross multiplication)."""
        o = RatFn.coerce(other)
        return self.num * o.den == o.num * self.den

    def __eq__(self, other):
        if isinstance(other, (RatFn, Poly2, int, Fraction)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    def is_polynomial(self) -> bool:
        try:
            poly_divexact(self.num, self.den)
        except NotDivisible:
            return False
        return True

    def as_poly(self) -> Poly2:
        return poly_divexact(self.num, self.den)

    def diff(self, var: str) -> "RatFn":
        n, d = self.num, self.den
        return RatFn(n.diff(var) * d - n * d.diff(var), d * d).simplify()

    def __call__(self, x, y=0):
        return self.num(x, y) / self.den(x, y)

    def __repr__(self):
        return f"RatFn({str(self.num)!r}, {str(self.den)!r})"


def ratfn_simplify(r: RatFn) -> RatFn:
    """Remove common content and normalize the denominator to be monic.

    Cancels the common monomial factor, the numeric content and, when one
    side is univariate, the univariate gcd.  Full bivariate gcd is not
    attempted.
    """
    num, den = r.num, r.den
    if not num:
        return RatFn(ZERO, ONE)
    mi = min(num.monomial_content()[0], den.monomial_content()[0])
    mj = min(num.monomial_content()[1], den.monomial_content()[1])
    if mi or mj:
        mono = Poly2.monomial(mi, mj)
        num = poly_divexact(num, mono)
        den = poly_divexact(den, mono)
    g = None
    if len(den.variables()) <= 1 and not den.is_constant():
        g = _gcd_with_univariate(num, den)
    elif len(num.variables()) <= 1 and not num.is_constant():
        g = _gcd_with_univariate(den, num)
    if g is not None and not g.is_constant():
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    lc = den.leading_coefficient()
    return RatFn(num / lc, den / lc)


__all__ += ["poly_divmod", "shared_content"]
