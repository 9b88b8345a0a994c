"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: usage problems exit 1, anything raised
from this hierarchy exits 2.
"""


class GrooveganError(Exception):
    """Base class for all data/model errors raised by this package."""


class InvalidFileError(GrooveganError):
    """A MIDI file (or one of its fields) cannot be interpreted."""


class ConfigError(GrooveganError):
    """A configuration value or template violates its contract."""


class ContractViolationError(GrooveganError):
    """A caller passed arguments that break a documented precondition."""


class IngestError(GrooveganError):
    """A dataset directory cannot be turned into a usable corpus."""


class CheckpointError(GrooveganError):
    """A checkpoint file is missing, corrupt, or incompatible."""


class VersionError(GrooveganError):
    """A serialized artifact carries an unsupported schema version."""
