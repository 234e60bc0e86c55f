"""Exception types raised by gammalab services."""

from typing import Optional


class UsageError(ValueError):
    """Arguments or preconditions the caller is responsible for."""

    code = "usage_error"


class CapacityError(UsageError):
    """A configured size limit would be exceeded."""

    code = "capacity_exceeded"

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} is {size}, limit is {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class StructureParseError(ValueError):
    """A structure file could not be read."""

    code = "parse_error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column
