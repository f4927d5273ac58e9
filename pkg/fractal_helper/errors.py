"""
Exceptions raised by fractal_helper.

All of them are ValueError subclasses so callers can keep catching ValueError.
"""

from typing import Optional


class FractalHelperError(ValueError):
    """Base class for every error raised by the package"""


class InvalidDimensionError(FractalHelperError):
    """A truncated space was requested with too few levels"""


class CutoffTooSmallError(FractalHelperError):
    """
    The analytic tail beyond the cutoff exceeds the tolerance.

    Attributes:
        required (int): Smallest cutoff that meets the tolerance.
    """

    def __init__(self, message: str, required: int) -> None:
        super().__init__(message)
        self.required = required


class ParameterRangeError(FractalHelperError):
    """A parameter is outside the documented numerical range"""


class SingularInputError(FractalHelperError):
    """The operation is singular at this input, use the limit instead"""


class DimensionMismatchError(FractalHelperError):
    """Operands live on spaces of different dimension"""


class InvalidSampleError(FractalHelperError):
    """Input samples cannot be used (nonpositive radius, too few rows, ...)"""


class ConfigError(FractalHelperError):
    """
    The run configuration could not be parsed.

    Attributes:
        line (Optional[int]): 1-based line of the offending entry, if known.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        super().__init__(message)
        self.line = line
