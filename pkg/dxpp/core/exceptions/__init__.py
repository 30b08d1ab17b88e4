"""Exception hierarchy of dxpp. Every error raised on purpose derives from DxppError."""


class DxppError(Exception):
    pass


class ProblemDataError(DxppError, ValueError):
    """The QP data violates the contract of build_problem."""


class DimensionMismatchError(ProblemDataError):
    pass


class NonFiniteDataError(ProblemDataError):
    pass


class AsymmetricMatrixError(ProblemDataError):
    """P differs from its transpose by more than the repair tolerance."""

    def __init__(self, asymmetry, tolerance):
        super().__init__(
            'P is asymmetric: relative deviation {:.3e} exceeds {:.1e}'.format(asymmetry, tolerance)
        )
        self.asymmetry = asymmetry
        self.tolerance = tolerance


class SolverFailureError(DxppError):
    """The forward solve did not reach status 'optimal'."""

    def __init__(self, solution, message=None):
        super().__init__(message or 'forward solve ended with status {}'.format(solution.status.value))
        self.solution = solution
        self.status = solution.status


class FactorizationError(DxppError):
    """A symmetric factorization met a nonpositive pivot."""

    def __init__(self, pivot_index, min_pivot, message=None):
        super().__init__(
            message
            or 'matrix is not positive definite: pivot {} is {:.3e}'.format(pivot_index, min_pivot)
        )
        self.pivot_index = pivot_index
        self.min_pivot = min_pivot


class ConvergenceError(DxppError):
    """Conjugate gradient did not reach its tolerance within the iteration cap."""

    def __init__(self, iterations, residual=None):
        super().__init__(
            'conjugate gradient did not converge after {} iterations'.format(iterations)
        )
        self.iterations = iterations
        self.residual = residual


class UnknownParameterBlockError(DxppError, KeyError):
    def __init__(self, block):
        super().__init__(block)
        self.block = block

    def __str__(self):
        return 'unknown parameter block {!r}'.format(self.block)


class ZeroDenominatorError(DxppError, ZeroDivisionError):
    """The reference gradient of a relative discrepancy is zero."""


class ProblemFileError(DxppError):
    """A problem file or right-hand-side file could not be parsed."""


class SignConventionError(DxppError):
    """An adapter returned multipliers with flipped signs."""
