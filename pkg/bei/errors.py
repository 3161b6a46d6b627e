"""
Exception hierarchy for the toolkit.

Every error carries the process exit code the command line uses for it:
2 for bad input, 3 for a resource cap, 1 for verification or
internal-consistency failures.
"""


class BeiError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class GraphError(BeiError, ValueError):
    """Malformed graph or vertex out of range."""

    exit_code = 2


class FamilyError(BeiError, ValueError):
    """Invalid family parameters (ChainSpec or StarParams)."""

    exit_code = 2


class ConfigError(BeiError, ValueError):
    """Invalid configuration value."""

    exit_code = 2


class CapExceededError(BeiError):
    """An input is larger than an exact algorithm is allowed to handle."""

    exit_code = 3

    def __init__(self, cap_name: str, limit: int, actual: int, hint: str = ""):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        message = f"{cap_name} is {limit}, got {actual}"
        if hint:
            message = f"{message}; {hint}"
        super().__init__(message)


class ConsistencyError(BeiError):
    """A result contradicts a structural fact the computation relies on."""

    exit_code = 1


class VerificationFailed(BeiError):
    """At least one verification instance did not match its prediction."""

    exit_code = 1


class IdealError(BeiError, ValueError):
    """Malformed monomial ideal or matching."""

    exit_code = 2


class ComplexError(BeiError, ValueError):
    """A face family that is not a simplicial complex."""

    exit_code = 2
