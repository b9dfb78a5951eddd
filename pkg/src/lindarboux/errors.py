"""Exception hierarchy shared by the symbolic and numeric layers."""


class LinDarbouxError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(LinDarbouxError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""

    def __init__(self, remainder=None, message="polynomial division is not exact"):
        super().__init__(message)
        self.remainder = remainder


class ParseError(LinDarbouxError, ValueError):
    def __init__(self, offset, expected, source=""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.source = source
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"parse error at offset {offset}: expected one of {{{exp}}}")


class DegenerateChange(LinDarbouxError, ValueError):
    """The change of variable yields P == 0 or has dg/dy == 0."""


class GuardViolation(LinDarbouxError, ValueError):
    """A parameter exclusion of a family was hit."""

    def __init__(self, condition):
        self.condition = condition
        super().__init__(f"parameter guard violated: {condition}")


class DomainError(LinDarbouxError, ValueError):
    pass


class Pole(DomainError):
    def __init__(self, where, message=None):
        self.where = where
        super().__init__(message or f"pole at {where!r}")


class NoConvergence(LinDarbouxError, ArithmeticError):
    pass


class LinearDependence(DomainError):
    """The fundamental pair degenerates for the requested parameter."""


class NoPolynomialSolution(LinDarbouxError, ValueError):
    pass


class WrongShape(LinDarbouxError, ValueError):
    pass


class DenominatorCollapse(LinDarbouxError, ValueError):
    pass


class SingularStart(LinDarbouxError, ValueError):
    pass


class BlowUp(LinDarbouxError, ArithmeticError):
    pass


class StepCollapse(LinDarbouxError, ArithmeticError):
    pass


class AllSkipped(LinDarbouxError, ValueError):
    pass


class DivByZero(DomainError):
    """A first-integral denominator vanished at the evaluation point."""
