"""
Symmetric positive definite factorizations: dense Cholesky, sparse Cholesky after a
fill-reducing ordering, or a Jacobi-preconditioned conjugate gradient operator when a
factor would not fit in the memory budget.
"""
import dataclasses
from enum import Enum
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp
from scipy.linalg import cho_solve, lapack
from scipy.sparse.linalg import LinearOperator, splu

from dxpp.core.exceptions import FactorizationError
from dxpp.core.linalg.cg import JacobiCg
from dxpp.core.logger import log

try:
    from sksparse import cholmod
    _has_sksparse_cholmod = True
except ImportError:
    _has_sksparse_cholmod = False

STRATEGIES = ('auto', 'dense', 'sparse', 'cg')
DENSE_BYTES_PER_ENTRY = 8
# value plus row index plus a share of the column pointers
SPARSE_BYTES_PER_ENTRY = 12


class FactorKind(Enum):
    DENSE_CHOLESKY = 'dense_cholesky'
    SPARSE_CHOLESKY = 'sparse_cholesky'
    CG_OPERATOR = 'cg_operator'


@dataclasses.dataclass(frozen=True)
class FactorOptions:
    strategy: str = 'auto'
    dense_max_n: int = 512
    dense_min_density: float = 0.25
    memory_budget: int = 2 * 1024 ** 3
    cg_tolerance: float = 1e-10
    cg_max_iter_factor: int = 10

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(
                'unknown strategy {!r}, expected one of {}'.format(self.strategy, STRATEGIES)
            )


@dataclasses.dataclass(frozen=True, eq=False)
class SpdFactor:
    """
    Handle of a factorized SPD matrix. Read-only after construction, so several threads
    may solve against one factor.
    """

    kind: FactorKind
    n: int
    min_pivot: float
    fill_stats: Optional[tuple] = None
    tolerance: Optional[float] = None
    max_iterations: Optional[int] = None
    _solve: Callable = dataclasses.field(default=None, repr=False)

    def solve(self, rhs):
        """
        :param rhs: n-vector or n x k matrix
        :return: M^-1 rhs with the shape of rhs
        """
        rhs = np.asarray(rhs, dtype=float)
        if rhs.ndim == 2 and rhs.shape[1] == 0:
            return np.zeros((self.n, 0))
        if self.n == 0:
            return np.zeros(rhs.shape)
        return self._solve(rhs)


def matrix_density(M):
    n = M.shape[0]
    if n == 0:
        return 0.0
    nnz = M.nnz if sp.issparse(M) else np.count_nonzero(M)
    return nnz / float(n * n)


def select_strategy(M, options):
    """
    :return: 'dense', 'sparse' or 'cg' for the matrix M under the options
    """
    if isinstance(M, LinearOperator):
        return 'cg'
    n = M.shape[0]
    strategy = options.strategy
    if strategy == 'auto':
        if n <= options.dense_max_n or matrix_density(M) > options.dense_min_density:
            strategy = 'dense'
        else:
            strategy = 'sparse'
    if strategy == 'dense' and DENSE_BYTES_PER_ENTRY * n * n > options.memory_budget:
        strategy = 'cg' if options.strategy == 'auto' else strategy
    if strategy == 'sparse' and options.strategy == 'auto':
        nnz = M.nnz if sp.issparse(M) else np.count_nonzero(M)
        if SPARSE_BYTES_PER_ENTRY * nnz > options.memory_budget:
            strategy = 'cg'
    return strategy


def spd_factorize(M, strategy=None, options=None, diagonal=None):
    """
    Factorize the symmetric matrix M.

    :param M: dense array, scipy.sparse matrix or LinearOperator (conjugate gradient only)
    :param strategy: overrides options.strategy
    :param options: FactorOptions, the configured ones by default
    :param diagonal: diagonal of M, required when M is a LinearOperator
    :return: SpdFactor
    :raises FactorizationError: if a pivot is not positive
    """
    if options is None:
        from dxpp import config

        options = config.factor_options()
    if strategy is not None:
        options = dataclasses.replace(options, strategy=strategy)

    kind = select_strategy(M, options)
    if kind == 'cg':
        if options.strategy == 'auto' and not isinstance(M, LinearOperator):
            log('factor of the {0}x{0} matrix exceeds the memory budget, using CG'.format(M.shape[0]))
        return _cg_operator(M, options, diagonal)
    if kind == 'sparse':
        return _sparse_cholesky(sp.csc_matrix(M))
    return _dense_cholesky(M.toarray() if sp.issparse(M) else np.asarray(M, dtype=float))


def spd_solve(factor, rhs):
    """
    :param factor: SpdFactor
    :param rhs: n x k matrix (or n-vector)
    :return: n x k matrix X with M X = rhs
    """
    return factor.solve(rhs)


def _dense_cholesky(M):
    n = M.shape[0]
    if n == 0:
        return SpdFactor(FactorKind.DENSE_CHOLESKY, 0, np.inf, _solve=lambda rhs: rhs)
    lower, info = lapack.dpotrf(M, lower=True, clean=True)
    if info > 0:
        j = info - 1
        # the failing pivot a_jj - |l_j|^2, rows of L before j are complete
        pivot = float(M[j, j] - lower[j, :j] @ lower[j, :j])
        raise FactorizationError(j, pivot)
    if info < 0:
        raise FactorizationError(-1, np.nan, 'dpotrf rejected argument {}'.format(-info))
    pivots = np.diag(lower) ** 2
    if not np.all(np.isfinite(pivots)):
        raise FactorizationError(int(np.argmin(np.isfinite(pivots))), np.nan)

    def solve(rhs):
        return cho_solve((lower, True), rhs, check_finite=False)

    return SpdFactor(FactorKind.DENSE_CHOLESKY, n, float(pivots.min()), _solve=solve)


def _sparse_cholesky(M):
    n = M.shape[0]
    nnz_before = sp.tril(M).nnz
    if _has_sksparse_cholmod:
        factor = cholmod.analyze(M, ordering_method='amd')
        try:
            factor.cholesky_inplace(M)
        except cholmod.CholmodNotPositiveDefiniteError:
            # SuperLU reports the failing pivot
            return _superlu_cholesky(M, nnz_before)
        pivots = factor.D()
        return SpdFactor(
            FactorKind.SPARSE_CHOLESKY,
            n,
            float(pivots.min()),
            fill_stats=(nnz_before, int(factor.L().nnz)),
            _solve=factor,
        )
    return _superlu_cholesky(M, nnz_before)


def _superlu_cholesky(M, nnz_before):
    """
    Symmetric LU with diagonal pivoting after a minimum-degree ordering of M + M'.
    For an SPD matrix the diagonal of U holds the pivots of the LDL' factorization.
    """
    n = M.shape[0]
    if n == 0:
        return SpdFactor(FactorKind.SPARSE_CHOLESKY, 0, np.inf, (0, 0), _solve=lambda rhs: rhs)
    try:
        lu = splu(
            M,
            permc_spec='MMD_AT_PLUS_A',
            diag_pivot_thresh=0.0,
            options=dict(SymmetricMode=True),
        )
    except RuntimeError as e:
        raise FactorizationError(-1, 0.0, 'sparse factorization failed: {}'.format(e)) from e
    pivots = lu.U.diagonal()
    bad = np.flatnonzero(~(pivots > 0))
    if bad.size:
        # first failure in elimination order; perm_c maps original columns to positions
        first = int(bad[0])
        original = int(np.flatnonzero(lu.perm_c == first)[0])
        raise FactorizationError(original, float(pivots[first]))
    return SpdFactor(
        FactorKind.SPARSE_CHOLESKY,
        n,
        float(pivots.min()),
        fill_stats=(nnz_before, int(sp.triu(lu.U).nnz)),
        _solve=lu.solve,
    )


def _cg_operator(M, options, diagonal):
    n = M.shape[0]
    if diagonal is None:
        if isinstance(M, LinearOperator):
            raise ValueError('a matrix-free operator needs its diagonal for the preconditioner')
        diagonal = M.diagonal()
    diagonal = np.asarray(diagonal, dtype=float)
    if np.any(~(diagonal > 0)):
        index = int(np.flatnonzero(~(diagonal > 0))[0])
        raise FactorizationError(index, float(diagonal[index]))
    operator = JacobiCg(
        M,
        diagonal,
        tolerance=options.cg_tolerance,
        max_iterations=options.cg_max_iter_factor * max(n, 1),
    )
    return SpdFactor(
        FactorKind.CG_OPERATOR,
        n,
        float(diagonal.min()),
        tolerance=operator.tolerance,
        max_iterations=operator.max_iterations,
        _solve=operator.solve,
    )


def low_rank_update(factor, U):
    """
    Factor of M + U U' from a factor of M, solved with the Woodbury identity

        (M + UU')^-1 = M^-1 - M^-1 U (I + U'M^-1 U)^-1 U'M^-1

    :param factor: SpdFactor of M
    :param U: dense n x k array with small k
    :return: SpdFactor of the same kind; min_pivot stays the one of M, a lower bound
    """
    U = np.asarray(U, dtype=float)
    if U.shape[1] == 0:
        return factor
    solved_U = factor.solve(U).reshape(U.shape)
    capacitance = np.identity(U.shape[1]) + U.T @ solved_U
    lower, info = lapack.dpotrf(capacitance, lower=True, clean=True)
    if info != 0:
        raise FactorizationError(info - 1, np.nan, 'low-rank capacitance matrix is not SPD')

    def solve(rhs):
        base = factor.solve(rhs)
        correction = cho_solve((lower, True), U.T @ base, check_finite=False)
        return base - solved_U @ correction

    return dataclasses.replace(factor, _solve=solve)
