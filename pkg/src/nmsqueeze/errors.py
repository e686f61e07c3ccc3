"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ValueError):
    """A request exceeds a hard size guard (e.g. brute-force Hilbert space)."""


class NumericsError(RuntimeError):
    """A numerical scheme failed to converge; carries diagnostics in args."""


class ConfigError(ValueError):
    """Invalid run configuration (CLI or config file)."""
