"""Error types shared across the package."""


class CapacityError(ValueError):
    """Dense materialization requested beyond the supported qubit cap."""


class DimensionError(ValueError):
    """Operator and state dimensions do not match."""


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the offending field."""


class NumericalIntegrityError(RuntimeError):
    """A numerical invariant (norm, realness, probability range) was violated."""
