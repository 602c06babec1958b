"""Exception types shared across the package."""


class SemiqtError(Exception):
    """Base class for all library errors."""


class SemiringSpecError(SemiqtError):
    """Invalid carrier specification (non-prime p, bad epsilon, ...)."""


class SemiringMismatchError(SemiqtError):
    """Operands belong to different carriers."""


class DimensionMismatchError(SemiqtError):
    """Matrix/CP-map dimensions do not compose."""


class NotEnumerableError(SemiqtError):
    """Operation needs an enumerable carrier (or a registered closed form)."""


class BudgetExceededError(SemiqtError):
    """Enumeration would exceed the configured budget."""


class PrecisionLossError(SemiqtError):
    """Truncated p-adic addition cannot determine the result's digits."""


class NotNormalizableError(SemiqtError):
    """Group algebra scalar |G| is not invertible in the carrier."""


class NonNormalisedError(SemiqtError):
    """A Bell-scenario component fails the trace-preservation condition."""

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class OracleError(SemiqtError):
    """A hiding oracle violates the coset-constancy precondition."""


class ConfigError(SemiqtError):
    """Malformed CLI configuration input."""
