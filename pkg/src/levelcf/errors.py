"""Exception types shared across the package."""


class LevelcfError(Exception):
    """Base class for all levelcf errors."""


class ScaleError(LevelcfError):
    """A rating value lies outside the declared rating scale."""


class UnknownUserError(LevelcfError):
    """An operation referenced a user that is not in the matrix."""


class ConfigError(LevelcfError):
    """A measure, scale, or run configuration violates its invariants."""


class ParseError(LevelcfError):
    """An input file could not be parsed (malformed-line fraction exceeded)."""


class SplitError(LevelcfError):
    """The matrix cannot be partitioned under the requested constraints."""


class EvaluationError(LevelcfError):
    """An evaluation has no defined result (empty input, no qualifying users)."""
