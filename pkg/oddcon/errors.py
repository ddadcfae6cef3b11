"""Exception hierarchy shared by every oddcon subpackage.

All errors derive from ValueError so callers that only care about
"bad input" can keep catching that.
"""

from typing import Optional


class OddconError(ValueError):
    """Base class for all oddcon errors."""


class ChartError(OddconError):
    """Invalid chart declaration (duplicate or empty coordinate names)."""


class ChartMismatchError(OddconError):
    """Operands live on different charts."""


class UnknownCoordinateError(OddconError):
    """A coordinate name or index does not belong to the chart."""


class ParityError(OddconError):
    """A parity rule is violated."""


class SubstitutionError(OddconError):
    """A substitution is missing the image of a coordinate."""


class NotInvolutiveError(OddconError):
    """The operation needs rho o rho = 1."""


class SingularMatrixError(OddconError):
    """A matrix has no inverse over the rationals or the polynomials."""


class CoordinateChangeError(OddconError):
    """A coordinate change is malformed or its inverse is wrong."""


class ValenceError(OddconError):
    """A tensor has the wrong number of lower or upper slots."""


class ConnectionMismatchError(OddconError):
    """Two connections or a connection and an endomorphism do not fit together."""


class FrameError(OddconError):
    """Frame, coframe or gamma matrix data is inconsistent."""


class ExpressionSyntaxError(OddconError):
    """A polynomial expression could not be parsed."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class ModelError(OddconError):
    """A model file is malformed or violates a parity rule."""

    def __init__(self, message: str, line: int, column: Optional[int] = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.message = message
        self.line = line
        self.column = column


class CatalogError(OddconError):
    """A catalog name does not resolve to a built-in entry."""
