"""Exception and warning types shared across the package."""


class MumapError(Exception):
    """Base class for all package-specific errors."""


class SingularSystem(MumapError):
    """Steady-state system is singular (denominator magnitude below guard)."""

    def __init__(self, message, x=None, y=None):
        if x is not None and y is not None:
            message = f"{message} at point (x={x!r} m, y={y!r} m)"
        super().__init__(message)
        self.x = x
        self.y = y


class LocalFieldSingularity(MumapError):
    """Local-field denominator 1 - N*chi/3 is at the Clausius-Mossotti pole."""

    def __init__(self, message, x=None, y=None):
        if x is not None and y is not None:
            message = f"{message} at point (x={x!r} m, y={y!r} m)"
        super().__init__(message)
        self.x = x
        self.y = y


class UnstableStep(MumapError):
    """Integration diverged; the step size violates the stability bound."""


class NotSettled(MumapError):
    """Residual still above tolerance when the time horizon was reached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class AsymmetricGrid(MumapError):
    """Grid does not have the mirror symmetry the operation requires."""


class ConfigError(MumapError):
    """Base class for configuration problems (CLI exit code 2)."""


class ParseError(ConfigError):
    """Configuration document is not well-formed."""


class ValidationError(ConfigError):
    """Configuration value is out of range or a key is unknown."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class CoherenceMagnitudeWarning(UserWarning):
    """A computed coherence exceeds unit magnitude (unphysical regime)."""
