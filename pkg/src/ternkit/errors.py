"""Exception hierarchy shared by every module."""


class TernkitError(Exception):
    """Base class; `report` optionally carries the failing check record."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InputError(TernkitError, ValueError):
    pass


class StructureError(TernkitError):
    pass


class MembershipError(TernkitError, ValueError):
    pass


class UnsupportedError(TernkitError):
    pass


class InternalError(TernkitError):
    pass


class ParseError(TernkitError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column
