"""Exception types shared across the package."""


class NlsplitError(Exception):
    """Base class for all package-specific errors."""


class ConstraintError(NlsplitError):
    """A parameter violates one of the scheme's validity constraints."""


class ConfigParseError(NlsplitError):
    """A configuration file is malformed or contains unknown keys."""


class NonFiniteError(NlsplitError):
    """A field picked up NaN/Inf entries during stepping."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class BoundaryLeakError(NlsplitError):
    """Too much mass reached the edge of the truncated domain."""

    def __init__(self, message: str, time: float | None = None, fraction: float | None = None):
        super().__init__(message)
        self.time = time
        self.fraction = fraction


class ChirpUnderresolvedError(NlsplitError):
    """The grid cannot resolve the quadratic chirp of the factored vectorfield."""


class DegenerateDenominatorError(NlsplitError):
    """A normalized ratio was requested for a field with vanishing norm."""


class UnknownKindError(NlsplitError):
    """An unrecognized datum or figure kind was requested."""
