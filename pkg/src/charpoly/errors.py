"""Exception hierarchy shared by all modules."""


class CharpolyError(Exception):
    """Base class for library errors."""


class ConfigurationError(CharpolyError, ValueError):
    """Invalid potential, rule parameters or run configuration."""


class DomainError(CharpolyError, ValueError):
    """Argument outside the domain where a quantity is defined."""


class DegenerateInputError(CharpolyError, ValueError):
    """Coincident points make a Vandermonde normalisation vanish."""


class BoundsError(CharpolyError, IndexError):
    """Polynomial index outside the range held by a basis."""


class NumericError(CharpolyError, ArithmeticError):
    """Non-finite values encountered during evaluation."""


class AccuracyError(CharpolyError, ArithmeticError):
    """A refinement did not reach the requested accuracy.

    Both estimates are kept on the exception for inspection.
    """

    def __init__(self, message, coarse=None, fine=None):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine


class CapabilityError(CharpolyError, ValueError):
    """Request outside what an oracle can evaluate (size, potential kind)."""
