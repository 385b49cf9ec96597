"""Exception types raised across the package."""


class NCSetsError(Exception):
    """Base class for all package errors."""


class NotPrime(NCSetsError, ValueError):
    pass


class NotIrreducible(NCSetsError, ValueError):
    pass


class FieldTooLarge(NCSetsError, ValueError):
    pass


class FieldTooSmall(NCSetsError, ValueError):
    pass


class DivisionByZero(NCSetsError, ZeroDivisionError):
    pass


class MixedFields(NCSetsError, ValueError):
    pass


class DimensionMismatch(NCSetsError, ValueError):
    pass


class ZeroSuperdiagonal(NCSetsError, ValueError):
    pass


class MixedKinds(NCSetsError, ValueError):
    pass


class SingularMatrix(NCSetsError, ValueError):
    pass


class CommutingLineInput(NCSetsError, ValueError):
    pass


class FactorizabilityFailed(NCSetsError, ValueError):
    def __init__(self, i, j, msg=None):
        self.pair = (i, j)
        super().__init__(msg or f"lines {i} and {j} fail the factorizability condition")


class UnsupportedField(NCSetsError, ValueError):
    pass


class MinusThreeNotSquare(UnsupportedField):
    pass


class BadTriple(NCSetsError, ValueError):
    pass


class DegenerateDenominators(NCSetsError, ArithmeticError):
    pass


class TooLarge(NCSetsError, RuntimeError):
    """The requested enumeration or search exceeds the desk-scale limits."""


class UnknownTarget(NCSetsError, ValueError):
    pass
