"""
Exception hierarchy for the quaternionic curve toolkit.

Every error carries the process exit code the command line reports for it.
"""

from typing import Optional


class CurveError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParameterError(CurveError):
    """Invalid family, fixture or numerical parameter."""

    exit_code = 2


class QuaternionDomainError(CurveError):
    """Operation undefined for the given quaternion (inverse of zero)."""

    exit_code = 2


class DomainError(CurveError):
    """Parameter value or stencil outside a curve domain."""

    exit_code = 2


class GridRangeError(DomainError):
    """Parameter value outside the range covered by a frame field."""


class SingularParametrizationError(CurveError):
    """The speed of a curve vanishes."""

    exit_code = 4

    def __init__(self, message: str, t: Optional[float] = None):
        super().__init__(message)
        self.t = t


class UndefinedFrameError(CurveError):
    """Curvature vanishes, so the principal normal is undefined."""

    exit_code = 4

    def __init__(self, message: str, t: Optional[float] = None, index: Optional[int] = None):
        super().__init__(message)
        self.t = t
        self.index = index


class DegenerateRatioError(CurveError):
    """The curvature ratio f = r/k vanishes where a division by f is needed."""

    exit_code = 4


class NotUnitCurvatureError(CurveError):
    """A unit-curvature law was applied to a field with k != 1."""

    exit_code = 1


class DomainExceededError(CurveError):
    """The fitted torsion law leaves its domain |b s| < 1."""

    exit_code = 1


class IncomparableRangeError(CurveError):
    """Two curves share no range of the matching parameter."""

    exit_code = 5


class CriterionInapplicableError(CurveError):
    """The similarity criterion cannot be applied to this pair of curves."""

    exit_code = 5


class CurveIOError(CurveError):
    """Reading or writing an artifact file failed."""

    exit_code = 3
