"""Error hierarchy shared by every module.

Each error carries the process exit code the CLI maps it to:
2 for usage/config problems, 3 for data problems, 4 for numerical failures.
"""

from typing import Optional


class MediationError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class InvalidConfig(MediationError):
    """A model, grid or run configuration violates its invariants."""

    exit_code = 2


class ParseError(MediationError):
    """Configuration text is empty or not well-formed."""

    exit_code = 2


class SchemaError(MediationError):
    """Configuration has unknown or missing keys."""

    exit_code = 2

    def __init__(self, message: str, keys: Optional[list[str]] = None):
        super().__init__(message)
        self.keys = keys or []


class GridTooLarge(MediationError):
    """The requested grid exceeds the configured cap without an override."""

    exit_code = 2


class FormatError(MediationError):
    """A dataset file has a bad header or bad values."""

    exit_code = 3

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyFile(MediationError):
    """A dataset file holds no data rows."""

    exit_code = 3


class EmptyCell(MediationError):
    """One or more (a, m) cells hold no rows."""

    exit_code = 3

    def __init__(self, message: str, cells: Optional[list[tuple[int, int]]] = None):
        super().__init__(message)
        self.cells = cells or []


class PositivityViolation(EmptyCell):
    """An estimator needs a cell that is empty in the sample."""


class NotBinaryOutcome(MediationError):
    """An operation defined for binary Y received a non-binary outcome."""

    exit_code = 3


class InvalidInput(MediationError):
    """Numeric inputs are outside their admissible range."""

    exit_code = 3


class DegenerateStratum(MediationError):
    """A conditioning stratum needed by a diagnostic is empty."""

    exit_code = 3


class IoError(MediationError):
    """Reading or writing a file failed."""

    exit_code = 3


class NonFinite(MediationError):
    """A numerical routine produced a non-finite value."""

    exit_code = 4


class RankDeficient(MediationError):
    """A regression design matrix does not have full column rank."""

    exit_code = 4


class SettingFailed(MediationError):
    """Evaluating one grid setting failed; wraps the original error."""

    def __init__(self, index: int, cause: MediationError):
        super().__init__(f"setting {index}: {cause}")
        self.index = index
        self.cause = cause
        self.exit_code = cause.exit_code
