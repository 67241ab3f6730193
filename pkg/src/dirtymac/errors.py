"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


class DomainError(ValueError):
    """A numeric argument lies outside the function's domain."""


class InvalidCodeError(ValueError):
    """A parity-check matrix does not define a valid code (e.g. rank deficient)."""


class ResourceError(RuntimeError):
    """A requested table or enumeration exceeds the configured budget."""


class ConfigurationError(ValueError):
    """A run configuration violates a scheme precondition."""


class DegenerateConfigurationError(ValueError):
    """A covariance or distribution is singular where it must not be."""


class PrecisionError(RuntimeError):
    """A Monte-Carlo estimate cannot meet its precision contract."""
