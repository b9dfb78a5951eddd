"""Plain-text polynomial syntax used by the CLI and JSON payloads.

Grammar (whitespace between tokens is ignored)::

    poly   := [sign] term (sign term)*
    term   := coeff ["*" factors] | factors
    coeff  := INT ["/" POSINT]
    factors:= factor ("*" factor)*
    factor := ("x" | "y") ["^" INT]

Implicit multiplication such as ``2x`` is rejected.  No floating-point
literals.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import Poly2, RatFn
from .errors import ParseError

__all__ = ["parse_poly", "format_poly", "parse_ratfn", "format_ratfn", "format_coeff"]

_END = "end of input"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos=None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, expected):
        raise ParseError(self.offset(), expected, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self, expected=("integer",)) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.fail(expected)
        return int(self.text[start:self.pos])

    def parse(self) -> Poly2:
        terms = {}
        sign = 1
        ch = self.peek()
        if ch in "+-" and ch:
            sign = -1 if ch == "-" else 1
            self.pos += 1
        while True:
            (i, j), c = self.term()
            terms[(i, j)] = terms.get((i, j), 0) + sign * c
            ch = self.peek()
            if not ch:
                break
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                self.pos += 1
                continue
            self.fail(("+", "-", "*", _END))
        return Poly2(terms)

    def term(self):
        ch = self.peek()
        if ch.isdigit():
            c = self.coeff()
            if self.peek() == "*":
                self.pos += 1
                if self.peek() not in ("x", "y"):
                    self.fail(("x", "y"))
                i, j = self.factors()
                return (i, j), c
            if self.peek() in ("x", "y"):
                self.fail(("*", "/", "+", "-", _END))
            return (0, 0), c
        if ch in ("x", "y"):
            return self.factors(), Fraction(1)
        self.fail(("integer", "x", "y") if self.pos else ("+", "-", "integer", "x", "y"))

    def coeff(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            at = self.pos
            den = self.integer(("positive integer",))
            if den == 0:
                self.pos = at
                self.fail(("positive integer",))
            return Fraction(num, den)
        return Fraction(num)

    def factors(self):
        i = j = 0
        while True:
            ch = self.peek()
            if ch not in ("x", "y"):
                self.fail(("x", "y"))
            self.pos += 1
            e = 1
            if self.peek() == "^":
                self.pos += 1
                e = self.integer()
            if ch == "x":
                i += e
            else:
                j += e
            if self.peek() == "*":
                self.pos += 1
                continue
            nxt = self.peek()
            if nxt and nxt not in "+-":
                self.fail(("*", "+", "-", _END))
            return i, j


def parse_poly(s: str) -> Poly2:
    """Parse a polynomial; raise :class:`ParseError` with the byte offset."""
    return _Parser(s).parse()


def format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(p: Poly2) -> str:
    """Deterministic text, terms in descending grlex order; zero is ``"0"``."""
    if not p:
        return "0"
    out = []
    for n, ((i, j), c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _monomial(i, j)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def parse_ratfn(num: str, den: str = "1") -> RatFn:
    return RatFn(parse_poly(num), parse_poly(den))


def format_ratfn(r: RatFn) -> dict:
    return {"num": format_poly(r.num), "den": format_poly(r.den)}
