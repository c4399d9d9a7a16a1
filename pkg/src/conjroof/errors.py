"""Exception types raised by the library.

Each class maps onto one CLI exit code, see :mod:`conjroof.cli`.
"""


class ConjroofError(ValueError):
    """Base class for all validation errors of this package."""


class ShapeError(ConjroofError):
    """Input has the wrong shape (non-square, wrong length, ...)."""


class SymmetryError(ConjroofError):
    """Matrix fails a Hermitian or transpose-symmetry requirement."""


class NotPSDError(ConjroofError):
    """Operator has an eigenvalue below the negative tolerance."""


class DimensionMismatchError(ConjroofError):
    """Two operands live on Hilbert spaces of different dimension."""


class OperatorClassError(ConjroofError):
    """Antilinear operator is not of the class an operation requires."""


class UnsupportedDimsError(ConjroofError):
    """Factor dimensions are outside what an operation supports."""


class ParseError(ConjroofError):
    """Input file is not a valid state, operator or ensemble document."""
