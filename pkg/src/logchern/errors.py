"""Exception hierarchy.

InputError maps to CLI exit code 1, HypothesisError to exit code 2.
"""


class LogChernError(Exception):
    """Base class for all package errors."""


class InputError(LogChernError):
    """Malformed or invalid user input (bad file, zero normal, duplicates)."""


class ArityMismatchError(InputError):
    """Operands live over polynomial rings with different variable counts."""


class NonUnitError(InputError):
    """Inversion of a truncated polynomial whose constant term is not a unit."""


class HypothesisError(LogChernError):
    """A theorem hypothesis fails or cannot be certified for this input."""


class NotFiniteLengthError(LogChernError):
    """Length requested for a module that is not finite dimensional."""


class ResolutionLengthError(LogChernError):
    """Resolution construction exceeded the allowed number of steps."""


class EngineError(LogChernError):
    """Internal inconsistency detected by a cross-check; indicates a bug."""
