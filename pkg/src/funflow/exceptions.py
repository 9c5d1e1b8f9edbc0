"""Exception types raised across the package.

Everything derives from ValueError so callers that only care about
"bad input" can catch the stdlib type.
"""


class FunflowError(ValueError):
    """Base class for all package-specific errors."""


class InvalidBasisError(FunflowError):
    """Basis construction parameters are inconsistent."""


class OutOfDomainError(FunflowError):
    """An evaluation time lies outside the basis domain."""


class DomainMismatchError(FunflowError):
    """Two bases that must share a domain do not."""


class InvalidOperatorError(FunflowError):
    """Differential operator order incompatible with the basis smoothness."""


class InvalidDataError(FunflowError):
    """Input data violates a documented precondition (e.g. negative values)."""


class RankDeficiencyError(FunflowError):
    """A least-squares system is singular; usually fixable with a penalty."""


class FoldSizeError(FunflowError):
    """Cross-validation folds would be too small."""


class BasisMismatchError(FunflowError):
    """A dataset was built on a different basis than the model expects."""


class InvalidLevelError(FunflowError):
    """Confidence level outside (0, 1)."""


class DegenerateFoldError(FunflowError):
    """A leave-one-out fold carries no information (hat diagonal of 1)."""


class AlignmentError(FunflowError):
    """Covariate and response datasets do not share labels/order."""


class InsufficientDataError(FunflowError):
    """Not enough observations for the requested procedure."""


class ShapeError(FunflowError):
    """Array dimensions do not match."""


class HistoryError(FunflowError):
    """A lagged feature row lacks the required preceding values."""


class DegenerateRegressorError(FunflowError):
    """A regressor has zero variance."""


class DivergenceError(FunflowError):
    """Training produced a non-finite loss."""


class ParseError(FunflowError):
    """A data file could not be parsed."""


class NoDataError(FunflowError):
    """Ingestion produced no usable series."""


class UsageError(FunflowError):
    """Bad command-line or configuration input."""
