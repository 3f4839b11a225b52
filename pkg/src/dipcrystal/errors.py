"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, ConvergenceError -> 2,
RegimeViolation -> 3.
"""


class DipcrystalError(Exception):
    pass


class ConfigError(DipcrystalError):
    """Invalid input parameters or configuration file."""


class ConvergenceError(DipcrystalError):
    """An iterative solver or truncated basis failed to converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class RegimeViolation(DipcrystalError):
    """Requested parameters violate a physical validity condition."""


class NumericalInstabilityError(DipcrystalError):
    """A quantity that must be (semi)definite came out significantly negative."""
