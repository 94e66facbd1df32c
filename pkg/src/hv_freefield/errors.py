"""
Exception hierarchy for hv_freefield.

Every error raised by the engine derives from HvFreeFieldError and knows
which process exit code the CLI should report for it.
"""
from typing import Any, Optional

from hv_freefield.constants import ExitCode


class HvFreeFieldError(Exception):
    """Base exception for all hv_freefield errors."""

    exit_code: ExitCode = ExitCode.CONFIG_ERROR
    # offending value, reported by suites when a check raises
    witness: Optional[Any] = None


class DivisionByZeroScalar(HvFreeFieldError, ZeroDivisionError):
    """Raised when dividing by the zero Scalar or when a binding kills a denominator."""

    def __init__(self, message: str = "division by the zero Scalar", expression: Any = None):
        self.expression = expression
        self.witness = expression
        if expression is not None:
            message = f"{message}: {expression}"
        super().__init__(message)


class NonIntegerPower(HvFreeFieldError):
    """A vertex operator needs z^A but A is not an integer constant."""

    def __init__(self, exponent: Any, context: str = ""):
        self.exponent = exponent
        self.witness = exponent
        message = f"z-exponent {exponent} is not an integer"
        if context:
            message = f"{message} ({context})"
        super().__init__(message)


class UnsupportedSpace(HvFreeFieldError):
    """An operator was applied to a space on which it is not defined."""

    def __init__(self, operator: str, space: Any):
        self.operator = operator
        self.space = space
        self.witness = f"{operator} on {space}"
        super().__init__(f"{operator} is not defined on {space}")


class GrammarError(HvFreeFieldError):
    """Parse error in state, operator-word or scalar text."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.reason = message
        self.text = text
        self.position = position
        full_message = f"{message} at position {position}"
        if text:
            full_message = f"{full_message}\n  {text}\n  {' ' * position}^"
        super().__init__(full_message)

    def is_at_end(self) -> bool:
        """Check if parsing ran out of input."""
        return self.position >= len(self.text)


class ConfigurationError(HvFreeFieldError):
    """Invalid run configuration."""
    pass


class CheckFailure(HvFreeFieldError):
    """A verification check found a counterexample."""

    exit_code = ExitCode.VERIFICATION_FAILED

    def __init__(self, message: str, witness: Optional[Any] = None):
        self.witness = witness
        super().__init__(message)
