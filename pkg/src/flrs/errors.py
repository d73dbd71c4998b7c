class ParameterError(ValueError):
    """Raised when code, channel or decoder parameters violate a constraint."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (a bug, not bad input)."""
