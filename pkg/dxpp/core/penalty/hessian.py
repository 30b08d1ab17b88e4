"""
Assembly and factorization of the penalty Hessian

    H = P + (1/delta) B'WB [+ E]

where B stacks A over the active rows of C, W = diag(rho/2, ..., alpha/4, ...) and
E = alpha C_I' diag(p''(s_I)) C_I is the curvature of the inactive rows, left out when
pruning.
"""
import dataclasses
from typing import Optional

import numpy as np
import scipy.sparse as sp

from dxpp.core.linalg.factor import (
    SPARSE_BYTES_PER_ENTRY,
    DENSE_BYTES_PER_ENTRY,
    SpdFactor,
    low_rank_update,
    spd_factorize,
)
from dxpp.core.linalg.products import PenaltyOperator, gram_nnz_bound, weighted_gram
from dxpp.core.logger import log
from dxpp.core.penalty.softplus import softplus_second

# a row of B with more nonzeros than this times sqrt(n) is split off as a low-rank term
DENSE_ROW_FACTOR = 10.0


@dataclasses.dataclass(frozen=True, eq=False)
class PenaltyHessian:
    """
    The assembled Hessian with its cached factorization. H is a matrix, or a
    LinearOperator when forming it would not fit in memory.
    """

    H: object
    B: object
    W: np.ndarray
    factorization: SpdFactor
    problem: object
    solution: object
    active_set: object
    config: object
    E_delta: Optional[object] = None
    margin_warning: bool = False

    @property
    def delta(self):
        return self.config.delta

    @property
    def min_pivot(self):
        return self.factorization.min_pivot

    def solve(self, rhs):
        return self.factorization.solve(rhs)


def stack_active_rows(problem, active_set):
    """:return: B = [A; C_A] in the storage mode of the problem"""
    C_active = problem.C[active_set.active_rows]
    if problem.is_sparse:
        return sp.csr_matrix(sp.vstack([problem.A, C_active], format='csr'))
    return np.vstack([problem.A, C_active])


def penalty_weights(problem, active_set, config):
    """:return: the diagonal of W, rho/2 per equality and alpha/4 per active inequality"""
    return np.concatenate([
        np.full(problem.p, config.rho / 2.0),
        np.full(active_set.size, config.alpha / 4.0),
    ])


def inactive_curvature(problem, active_set, config):
    """
    :return: (rows, weights) of E = C_rows' diag(weights) C_rows, rows whose p'' underflows
        to zero dropped
    """
    slack = active_set.slack[active_set.inactive_rows]
    weights = config.alpha * softplus_second(slack, config.delta)
    keep = weights > 0
    return active_set.inactive_rows[keep], weights[keep]


def _dense_rows(B, n):
    if not sp.issparse(B) or B.shape[0] == 0:
        return np.zeros(B.shape[0], dtype=bool)
    counts = np.diff(sp.csr_matrix(B).indptr)
    return counts > DENSE_ROW_FACTOR * np.sqrt(n)


def assemble_hessian(problem, solution, active_set, config, options=None):
    """
    :param problem: QpProblem
    :param solution: optimal QpSolution
    :param active_set: ActiveSet of the solution
    :param config: PenaltyConfig with rho and alpha set
    :param options: FactorOptions, the configured ones by default
    :return: PenaltyHessian with its SPD factorization
    :raises FactorizationError: if H is not positive definite, reporting the smallest pivot
    """
    if not config.has_weights:
        raise ValueError('penalty weights are not set, use set_penalty_weights first')
    if options is None:
        from dxpp import config as dxpp_config

        options = dxpp_config.factor_options()
    n = problem.n
    delta = config.delta

    margin_warning = bool(
        active_set.inactive_rows.size and active_set.margin < config.margin_threshold()
    )
    if margin_warning:
        log('margin {:.3e} is below 10 delta log(1/delta) = {:.3e}, the inactive terms '
            'are not negligible'.format(active_set.margin, config.margin_threshold()))

    B = stack_active_rows(problem, active_set)
    W = penalty_weights(problem, active_set, config)

    # rows entering the Hessian: B with weights W / delta, plus the inactive rows when unpruned
    rows, weights = B, W / delta
    E_rows, E_weights = None, None
    if not config.prune_inactive and active_set.inactive_rows.size:
        inactive, E_weights = inactive_curvature(problem, active_set, config)
        E_rows = problem.C[inactive]
        if problem.is_sparse:
            rows = sp.csr_matrix(sp.vstack([B, E_rows], format='csr'))
        else:
            rows = np.vstack([B, E_rows])
        weights = np.concatenate([weights, E_weights])
    E_delta = None
    if E_rows is not None:
        E_delta = weighted_gram(E_rows, E_weights)

    dense = _dense_rows(rows, n) if n > options.dense_max_n else np.zeros(rows.shape[0], bool)
    sparse_rows = rows[~dense] if dense.any() else rows
    sparse_weights = weights[~dense]

    if problem.is_sparse:
        nnz_estimate = problem.P.nnz + gram_nnz_bound(sparse_rows)
        too_large = SPARSE_BYTES_PER_ENTRY * nnz_estimate > options.memory_budget
    else:
        too_large = DENSE_BYTES_PER_ENTRY * n * n > options.memory_budget
    if options.strategy == 'cg' or (options.strategy == 'auto' and too_large):
        H = PenaltyOperator(problem.P, rows, weights)
        factor = spd_factorize(H, options=options, diagonal=H.diagonal())
    else:
        base = problem.P + weighted_gram(sparse_rows, sparse_weights)
        factor = spd_factorize(base, options=options)
        if dense.any():
            U = rows[dense].T.toarray() * np.sqrt(weights[dense])
            factor = low_rank_update(factor, U)
            H = PenaltyOperator(problem.P, rows, weights)
        else:
            H = base
    log('penalty Hessian: n={}, {} equality and {} active rows, {} factor, min pivot {:.3e}'
        .format(n, problem.p, active_set.size, factor.kind.value, factor.min_pivot))

    return PenaltyHessian(
        H=H,
        B=B,
        W=W,
        factorization=factor,
        problem=problem,
        solution=solution,
        active_set=active_set,
        config=config,
        E_delta=E_delta,
        margin_warning=margin_warning,
    )
