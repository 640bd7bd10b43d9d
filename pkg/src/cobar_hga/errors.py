"""Exception types raised across the package."""


class CobarHgaError(Exception):
    pass


class UnknownBasisId(CobarHgaError, KeyError):
    """A structure constant or vector refers to an undeclared basis element."""


class ArityMismatch(CobarHgaError, ValueError):
    pass


class NotHomogeneous(CobarHgaError, ValueError):
    pass


class NotReduced(CobarHgaError, ValueError):
    """The input is not reduced enough for the requested construction."""


class TruncationOverflow(CobarHgaError, ArithmeticError):
    """A nonzero term would be cut off by the truncation bounds."""

    def __init__(self, message, region=None):
        super().__init__(message)
        self.region = region


class OutOfTruncatedRegion(CobarHgaError, ValueError):
    pass


class BrownViolated(CobarHgaError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpecParseError(CobarHgaError, ValueError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
