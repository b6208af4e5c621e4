"""Exception hierarchy shared by every pald module."""


class PaldError(Exception):
    """Base class; ``category`` is the machine-readable tag used by the CLI."""

    category = "error"


class DimensionError(PaldError, ValueError):
    """Array shapes or sizes are incompatible."""

    category = "dimension"


class InvalidPairError(PaldError, ValueError):
    """A pair (x, y) with x == y where distinct elements are required."""

    category = "invalid-pair"


class ValidationError(PaldError, ValueError):
    """Relevance/support arrays violate the structural properties (a)-(d)."""

    category = "validation"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class IngestError(PaldError, ValueError):
    """Input file could not be parsed into the expected table."""

    category = "ingest"


class ConfigError(PaldError, ValueError):
    """Inconsistent run configuration."""

    category = "config"


class ConservationError(PaldError, RuntimeError):
    """Total cohesion drifted from n/2 by more than the allowed residual."""

    category = "conservation"
