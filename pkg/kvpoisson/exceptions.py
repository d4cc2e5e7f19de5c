"""Exceptions raised by the KV-Poisson workbench."""


class KvPoissonError(Exception):
    """Base class for every error raised by this package."""


class MalformedInputError(KvPoissonError, ValueError):
    """Input of the wrong shape, length or vocabulary."""


class DimensionMismatchError(MalformedInputError):
    """Two operands that must share a dimension do not."""


class SingularMatrixError(KvPoissonError, ArithmeticError):
    """A matrix that must be invertible is singular."""


class SizeGuardError(KvPoissonError):
    """A requested computation exceeds a configured size guard."""

    def __init__(self, message, count=None, limit=None):
        super().__init__(message)
        self.count = count
        self.limit = limit


class ComplexPreconditionError(KvPoissonError):
    """A cochain complex was requested for a structure it is not defined for.

    Attributes:
        axiom: name of the identity that fails
        witness: 1-based basis tuple on which it fails
        residual: the nonzero residual vector at the witness
    """

    def __init__(self, message, axiom=None, witness=None, residual=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness
        self.residual = residual


class AlgebraFileError(MalformedInputError):
    """Parse error in an algebra file, located by 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        location = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column
