"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function (e.g. p > 1)."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested tolerance."""


class ConstraintError(ValueError):
    """A parameter set violates a power or equalization constraint."""


class ConfigError(ValueError):
    """Invalid scenario configuration. ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
