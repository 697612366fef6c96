from typing import Optional


class WorkbenchError(Exception):
    """Base error; `exit_code` is what the command line returns for it."""
    exit_code = 1


class UsageError(WorkbenchError):
    exit_code = 1


class DimensionMismatchError(WorkbenchError, ValueError):
    exit_code = 1


class AlgebraMismatchError(WorkbenchError, ValueError):
    exit_code = 1


class InvalidRepresentationError(WorkbenchError, ValueError):
    exit_code = 1


class PresentationParseError(WorkbenchError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


class AdmissibilityError(WorkbenchError, ValueError):
    exit_code = 2


class BudgetExceededError(WorkbenchError):
    exit_code = 3


class CertificationError(WorkbenchError):
    exit_code = 4


class UndeterminedSummandError(WorkbenchError):
    exit_code = 4


class FactMismatchError(WorkbenchError):
    exit_code = 5


class InternalConsistencyError(WorkbenchError):
    exit_code = 5


class InvalidIdealError(WorkbenchError, ValueError):
    exit_code = 1
