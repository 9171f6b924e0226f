"""Exception hierarchy.

Every validation failure raises a subclass of :class:`HGraphonError`, so
callers (the CLI in particular) can catch one type and map it to exit code 2.
"""


class HGraphonError(ValueError):
    """Base class for invalid input."""


class NonMonotonePartition(HGraphonError):
    pass


class EndpointsNot01(HGraphonError):
    pass


class AsymmetricValues(HGraphonError):
    pass


class ValueOutOfRange(HGraphonError):
    pass


class DimensionMismatch(HGraphonError):
    pass


class CoordinateOutOfRange(HGraphonError):
    pass


class UnknownFamily(HGraphonError):
    pass


class InvalidN(HGraphonError):
    pass


class InvalidTrials(HGraphonError):
    pass


class AsymmetricC(HGraphonError):
    pass


class UnalignedPartition(HGraphonError):
    pass


class NTooLargeForOracle(HGraphonError):
    pass


class GraphFormatError(HGraphonError):
    pass


class UnboundedObjective(ArithmeticError):
    """The LP objective is unbounded; signals malformed input."""
