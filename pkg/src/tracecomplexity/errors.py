"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: data problems (unreadable or malformed
input) exit with 2, solver and configuration problems with 3.
"""


class TraceComplexityError(Exception):
    """Base class for all errors raised by this package."""


class DataError(TraceComplexityError):
    """Input data is missing, malformed, or unusable."""


class TraceParseError(DataError):
    """A trace file row could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyTraceError(DataError):
    """A trace must contain at least one entry."""


class ConfigError(TraceComplexityError):
    """Bad configuration, e.g. an unknown compressor backend."""


class SolverError(TraceComplexityError):
    """A solver target is outside the reachable range or ill-defined."""
