"""Exception and warning types shared across the package."""


class PadicError(Exception):
    """Base class for every error raised by padic_lab."""


class MismatchError(PadicError, ValueError):
    """Operands disagree on prime, precision or shape."""


class NonUnit(PadicError, ValueError):
    pass


class NotASquare(PadicError, ValueError):
    pass


class UnsupportedPrime(PadicError, ValueError):
    """The operation is only defined for odd primes."""


class PrecisionExhausted(PadicError, ArithmeticError):
    """A quantity is indistinguishable from zero at the working precision."""


class DegeneratePrecision(PrecisionExhausted):
    """An elementary divisor sits too close to p**N to be trusted."""


class NotSymmetric(PadicError, ValueError):
    pass


class NotUnimodular(PadicError, ValueError):
    pass


class NotInvertible(PadicError, ValueError):
    pass


class InvalidQuasiState(PadicError, ValueError):
    pass


class InvalidAlgebra(PadicError, ValueError):
    pass


class InvalidGroupoid(PadicError, ValueError):
    pass


class ProfileMismatch(PadicError, ValueError):
    pass


class SquareInput(PadicError, ValueError):
    """A non-square unit was required but a square was given."""


class NotIsometric(PadicError, RuntimeError):
    """An embedding certificate failed; never silently accepted."""


class DimensionCapExceeded(PadicError, RuntimeError):
    pass


class PrecisionWarning(UserWarning):
    """Result is only meaningful up to the working precision."""


class IndexOutOfRange(PadicError, IndexError):
    pass
