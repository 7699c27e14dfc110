"""Exception types shared across the package."""


class CovselError(Exception):
    """Base class for all covsel errors."""


class NonFiniteInputError(CovselError):
    """An input matrix contains NaN or infinite entries."""


class AsymmetricMatrixError(CovselError):
    """A matrix is asymmetric beyond the construction tolerance."""


class NotPositiveDefiniteError(CovselError):
    """A matrix required to be positive definite is not."""


class InvalidBoundsError(CovselError):
    """Spectral bounds do not satisfy 0 <= alpha < beta (finite where required)."""


class InfiniteBoundsError(InvalidBoundsError):
    """A finite spectral box is required but beta is infinite (or alpha is zero)."""


class InfeasibleDualPointError(CovselError):
    """A dual point violates the elementwise box constraint around sigma."""


class DegeneratePenaltyError(CovselError):
    """rho = 0 leaves no finite a-priori bound (or no dual box) to work with."""


class NumericalFailureError(CovselError):
    """An iterative numerical routine failed to converge; carries diagnostics."""


class MatrixFormatError(CovselError):
    """A matrix file could not be parsed.

    Carries the offending path and 1-based line number so the CLI can point
    at the exact location.
    """

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
