"""Exception types shared across the package."""


class LabError(Exception):
    """Base class for every error raised by :mod:`lkneser`."""


class InvalidParameters(LabError, ValueError):
    """Parameters violate a constructor or operation precondition."""


class InvalidInput(LabError, ValueError):
    """An input object (coloring, map, file) is malformed or fails its contract."""


class BudgetExceeded(LabError):
    """The instance is larger than the configured budget for an exact solver."""


class NotAStar(LabError):
    """A block of an independent set is not an Erdős–Ko–Rado star."""


class CharacterizationViolation(LabError):
    """A maximum independent set could not be matched to any permutation."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}


class RetriesExhausted(LabError):
    """A Las Vegas procedure ran out of attempts."""


class SchemaError(InvalidInput):
    """A graph file or label sidecar does not match the documented format."""
