"""Exception hierarchy shared by every schemekit module."""


class SchemeKitError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class NotInvertibleError(SchemeKitError, ZeroDivisionError):
    pass


class BadReductionError(SchemeKitError):
    """A coefficient cannot be reduced modulo the requested prime."""


class ReconstructionError(SchemeKitError):
    pass


class RingMismatchError(SchemeKitError, TypeError):
    pass


class DegreeCapExceeded(SchemeKitError):
    pass


class NotZeroDimensionalError(SchemeKitError):
    pass


class ParseError(SchemeKitError):
    """Raised by the text parsers; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
