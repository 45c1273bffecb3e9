"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`GraphCalculusError`, which is itself a :class:`ValueError` so that
callers treating bad input generically keep working.
"""


class GraphCalculusError(ValueError):
    """Base class for all library errors."""


class NotSymmetric(GraphCalculusError):
    pass


class NotPositiveDefinite(GraphCalculusError):
    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class DimensionMismatch(GraphCalculusError):
    pass


class SingularMatrix(GraphCalculusError):
    """Raised when a matrix to be inverted is numerically singular.

    ``condition`` holds the estimated condition number (``inf`` when the
    matrix is exactly singular).
    """

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition


class NotPure(GraphCalculusError):
    pass


class NotSymplectic(GraphCalculusError):
    pass


class NotUnitary(GraphCalculusError):
    pass


class NotSelfInverse(GraphCalculusError):
    pass


class NonFiniteParameter(GraphCalculusError):
    pass


class ParameterOutOfRange(GraphCalculusError):
    pass


class IndexOutOfRange(GraphCalculusError):
    pass


class DuplicateIndex(GraphCalculusError):
    pass


class UnknownLabel(GraphCalculusError):
    pass


class SameNode(GraphCalculusError):
    pass


class LastNode(GraphCalculusError):
    pass


class InvalidPartition(GraphCalculusError):
    pass


class UnsupportedOperation(GraphCalculusError):
    pass
