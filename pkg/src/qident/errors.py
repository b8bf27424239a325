"""Exception types shared across the package."""


class QidentError(Exception):
    """Base class for all errors raised by this package."""


class NotDivisible(QidentError):
    """Exact polynomial division has a nonzero remainder."""


class ZeroAtPole(QidentError):
    """Evaluation of a Laurent polynomial at 0 with a negative exponent."""


class ModeMismatch(QidentError):
    """Symbolic and specialized series were mixed in one operation."""


class OrderMismatch(QidentError):
    """Series of different truncation orders were mixed in one operation."""


class NonInvertibleConstantTerm(QidentError):
    """Series inversion or division by a series with no invertible unit part."""


class NonTruncatingInfiniteProduct(QidentError):
    """Infinite Pochhammer argument carries no positive q power."""


class NonConvergent(QidentError):
    """An infinite sum failed to truncate within the term budget."""


class NonIntegerIndex(QidentError):
    """An index expression evaluated to a non-integer rational."""


class EvalError(QidentError):
    """Expression evaluation failed for a structural reason."""


class DslSyntaxError(QidentError):
    """Parse failure, carrying position and the expected-token set."""

    def __init__(self, message, line, col, expected=()):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col
        self.expected = tuple(expected)


class UnknownCounter(QidentError, KeyError):
    pass


class UnknownWeight(QidentError, KeyError):
    pass


class UnknownIdentity(QidentError, KeyError):
    pass
