"""Exceptions raised by numerical procedures."""


class NumericError(RuntimeError):
    """A numerical procedure exhausted its budget or went unstable."""


class QuadratureError(NumericError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class BracketExpansionError(NumericError):
    """Root bracketing did not find a sign change within its budget."""


class UnstableStepError(NumericError):
    """The integration step is too large for a stable trajectory."""
