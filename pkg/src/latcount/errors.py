"""Exception hierarchy.

The CLI maps each family onto an exit code: parse errors exit 2, domain
errors exit 3 and internal-consistency errors exit 4.
"""


class LatticeError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 4


class ParseError(LatticeError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DomainError(LatticeError, ValueError):
    """Input is well formed but outside the domain of the operation."""

    exit_code = 3


class DimensionError(DomainError):
    pass


class SingularMatrixError(DomainError):
    pass


class RankError(DomainError):
    pass


class PoleError(DomainError):
    pass


class UnboundedError(DomainError):
    pass


class WrongChamberError(DomainError):
    pass


class DegenerateDirectionError(DomainError):
    pass


class TableSizeError(DomainError):
    pass


class InconsistencyError(LatticeError, ArithmeticError):
    """An identity that must hold exactly did not."""

    exit_code = 4


class RegularitySearchError(InconsistencyError):
    def __init__(self, attempts):
        super().__init__(f"no regular vector found after {attempts} attempts")
        self.attempts = attempts
