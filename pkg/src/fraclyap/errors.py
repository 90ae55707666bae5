"""Exception types shared across the package."""


class FracLyapError(Exception):
    """Base class for all fraclyap-specific errors."""


class ExpressionError(FracLyapError):
    """Base class for expression parsing/evaluation failures."""


class ParseError(ExpressionError):
    """Syntax or name error in an expression, with the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalDomainError(ExpressionError):
    """Evaluation left the real domain (ln of nonpositive, 0^negative, ...)."""

    def __init__(self, message: str, x: float | None = None):
        if x is not None:
            message = f"{message} (argument {x!r})"
        super().__init__(message)
        self.x = x


class QuadratureError(FracLyapError):
    """Integration failed: non-finite integrand or exhausted panel budget.

    When the panel budget was exhausted, ``value``, ``error_estimate`` and
    ``subdivisions`` carry the best estimate reached.
    """

    def __init__(self, message, value=None, error_estimate=None, subdivisions=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


class KernelGeometryError(FracLyapError):
    """The crossover-root bracketing failed for a kernel geometry."""


class ShapeHypothesisWarning(UserWarning):
    """Sampled concavity/monotonicity hypothesis check failed or is undeclared."""
