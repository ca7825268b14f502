"""Exception hierarchy shared by every module."""


class MaxIntError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidTermRank(MaxIntError):
    pass


class InvalidMaxCardinality(MaxIntError):
    pass


class InvalidCell(MaxIntError):
    pass


class EmptyCollection(MaxIntError):
    pass


class InvalidPrefixLength(MaxIntError):
    pass


class FormatError(MaxIntError):
    pass


class InvalidDocument(FormatError):
    pass


class InsufficientData(MaxIntError):
    pass
