"""Exception hierarchy for ortho_ecoc."""

__all__ = [
    "OrthoEcocError",
    "InvalidCodingMatrix",
    "NotOrthogonalError",
    "SearchFailed",
    "UntrainableColumn",
    "TrainingDiverged",
    "OracleNotConverged",
    "DatasetFormatError",
]


class OrthoEcocError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCodingMatrix(OrthoEcocError, ValueError):
    """A coding matrix violates one of its structural invariants."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotOrthogonalError(InvalidCodingMatrix):
    """The fast decoder was handed a matrix without A A^T = n I."""


class SearchFailed(OrthoEcocError, RuntimeError):
    """A randomized matrix search exhausted its budget."""

    def __init__(self, message, attempts):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


class UntrainableColumn(OrthoEcocError, ValueError):
    """A coding-matrix column leaves only one class side populated."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class TrainingDiverged(OrthoEcocError, RuntimeError):
    """Gradient descent produced a non-finite loss."""


class OracleNotConverged(OrthoEcocError, RuntimeError):
    """The projected-gradient reference solver hit its iteration cap."""


class DatasetFormatError(OrthoEcocError, ValueError):
    """A dataset or decision-value file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
