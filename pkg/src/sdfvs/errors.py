"""Exception hierarchy shared by every module of the package."""


class SdfvsError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(SdfvsError, ValueError):
    """A graph could not be constructed (bad endpoint, unknown vertex)."""


class ContractViolation(SdfvsError, ValueError):
    """An operation was called with arguments violating its precondition."""


class InseparableError(SdfvsError):
    """No vertex separator exists between the given source and sink sets."""


class CapacityError(SdfvsError):
    """A deterministic construction is too large for the configured limits."""


class OracleBudgetError(SdfvsError):
    """A brute-force oracle refused an input beyond its size budget."""


class SearchLimitExceeded(SdfvsError):
    """The search tree exceeded the node budget or the wall-clock timeout."""


class InternalConsistencyError(SdfvsError, AssertionError):
    """A lifted solution failed certification. Indicates a bug."""


class ParseError(SdfvsError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
