"""
Right-hand side of the plug-in sensitivity system H Z = R with

    R = -(G + (dB')y + (1/delta) B'W g_theta [+ F])

evaluated at the solver's z* and y* = (nu*, mu*_A) with the QP data as parameters.
Columns of a matrix block are ordered row-major: column i * n + k belongs to entry (i, k).
The column of P entry (i, j) is the derivative along (E_ij + E_ji) / 2.
"""
import dataclasses
from typing import Optional

import numpy as np
import scipy.sparse as sp

from dxpp.core.exceptions import UnknownParameterBlockError
from dxpp.core.penalty.hessian import penalty_weights, stack_active_rows
from dxpp.core.penalty.softplus import softplus_first, softplus_second
from dxpp.core.problem import PARAMETER_BLOCKS, DataGradient, block_size

DIRECTION = 'direction'


@dataclasses.dataclass(frozen=True, eq=False)
class RhsAssembly:
    block: str
    G: np.ndarray
    dB_T_y: np.ndarray
    penalty_term: np.ndarray
    y_star: np.ndarray
    g_theta: np.ndarray
    F_delta: Optional[np.ndarray] = None

    @property
    def columns(self):
        return self.G.shape[1]

    @property
    def total(self):
        """:return: R = -(G + (dB')y + (1/delta) B'W g_theta [+ F])"""
        total = self.G + self.dB_T_y + self.penalty_term
        if self.F_delta is not None:
            total = total + self.F_delta
        return -total


def _dense(matrix):
    return matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix, dtype=float)


def _check_weights(config):
    if not config.has_weights:
        raise ValueError('penalty weights are not set, use set_penalty_weights first')


def _inactive_derivatives(active_set, config):
    slack = active_set.slack[active_set.inactive_rows]
    return (
        config.alpha * softplus_first(slack, config.delta),
        config.alpha * softplus_second(slack, config.delta),
    )


def assemble_rhs(problem, solution, active_set, config, param_block, direction=None):
    """
    :param problem: QpProblem
    :param solution: optimal QpSolution
    :param active_set: ActiveSet of the solution
    :param config: PenaltyConfig with rho and alpha set
    :param param_block: one of P, q, A, b, C, d, or 'direction'
    :param direction: DataGradient, required for param_block='direction'
    :return: RhsAssembly with one column per scalar parameter of the block
    :raises UnknownParameterBlockError: for any other param_block
    """
    if param_block == DIRECTION:
        if direction is None:
            raise ValueError("param_block 'direction' needs a DataGradient direction")
        return _direction_rhs(problem, solution, active_set, config, direction)
    if param_block not in PARAMETER_BLOCKS:
        raise UnknownParameterBlockError(param_block)
    _check_weights(config)

    n = problem.n
    active, inactive = active_set.active_rows, active_set.inactive_rows
    G, dB_T_y, g_theta = data_derivatives(problem, solution, active, param_block)

    F_delta = None
    if not config.prune_inactive and inactive.size:
        F_delta = np.zeros_like(G)
        first, second = _inactive_derivatives(active_set, config)
        if param_block == 'd':
            F_delta[:, inactive] = -_dense(problem.C[inactive]).T * second
        elif param_block == 'C':
            C_inactive = _dense(problem.C[inactive])
            for position, i in enumerate(inactive):
                F_delta[:, i * n:(i + 1) * n] = (
                    first[position] * np.identity(n)
                    + second[position] * np.outer(C_inactive[position], solution.z_star)
                )

    B = _dense(stack_active_rows(problem, active_set))
    W = penalty_weights(problem, active_set, config)
    penalty_term = B.T @ (W[:, None] * g_theta) / config.delta
    return RhsAssembly(
        block=param_block,
        G=G,
        dB_T_y=dB_T_y,
        penalty_term=penalty_term,
        y_star=np.concatenate([solution.nu_star, solution.mu_star[active]]),
        g_theta=g_theta,
        F_delta=F_delta,
    )


def data_derivatives(problem, solution, rows, param_block):
    """
    Derivatives of the optimality conditions with respect to one data block, with the
    inequality rows `rows` treated as equalities: B = [A; C_rows], y = (nu*, mu*_rows).

    :return: (G, (dB')y, g_theta) with G = d(Pz + q), g_theta = d(Bz - [b; d_rows]) at
        fixed z*, one column per scalar parameter
    """
    if param_block not in PARAMETER_BLOCKS:
        raise UnknownParameterBlockError(param_block)
    n, p = problem.n, problem.p
    k = len(rows)
    z, nu = solution.z_star, solution.nu_star
    mu_rows = solution.mu_star[rows]

    s = block_size(problem, param_block)
    G = np.zeros((n, s))
    dB_T_y = np.zeros((n, s))
    g_theta = np.zeros((p + k, s))
    if param_block == 'q':
        G[:] = np.identity(n)
    elif param_block == 'P':
        for i in range(n):
            # column (i, j) is (e_i z_j + e_j z_i) / 2
            G[i, i * n:(i + 1) * n] += 0.5 * z
            G[:, i * n:(i + 1) * n] += 0.5 * z[i] * np.identity(n)
    elif param_block == 'b':
        g_theta[:p, :] = -np.identity(p)
    elif param_block == 'd':
        g_theta[p + np.arange(k), rows] = -1.0
    elif param_block == 'A':
        for j in range(p):
            g_theta[j, j * n:(j + 1) * n] = z
            dB_T_y[:, j * n:(j + 1) * n] = nu[j] * np.identity(n)
    elif param_block == 'C':
        for position, i in enumerate(rows):
            g_theta[p + position, i * n:(i + 1) * n] = z
            dB_T_y[:, i * n:(i + 1) * n] = mu_rows[position] * np.identity(n)
    return G, dB_T_y, g_theta


def direction_derivatives(problem, solution, rows, direction):
    """
    data_derivatives contracted with a direction.

    :return: (G, (dB')y, g_theta) as vectors
    """
    if not isinstance(direction, DataGradient):
        raise TypeError('direction must be a DataGradient')
    n, p = problem.n, problem.p
    z, nu = solution.z_star, solution.nu_star
    mu_rows = solution.mu_star[rows]

    G = np.zeros(n)
    if direction.dP is not None:
        G += direction.dP @ z
    if direction.dq is not None:
        G += direction.dq
    dB_T_y = np.zeros(n)
    g_theta = np.zeros(p + len(rows))
    if direction.dA is not None:
        dB_T_y += direction.dA.T @ nu
        g_theta[:p] += direction.dA @ z
    if direction.db is not None:
        g_theta[:p] -= direction.db
    if direction.dC is not None:
        dB_T_y += direction.dC[rows].T @ mu_rows
        g_theta[p:] += direction.dC[rows] @ z
    if direction.dd is not None:
        g_theta[p:] -= direction.dd[rows]
    return G, dB_T_y, g_theta


def _direction_rhs(problem, solution, active_set, config, direction):
    """Single column of the right-hand side contracted with a data direction."""
    _check_weights(config)
    n = problem.n
    active, inactive = active_set.active_rows, active_set.inactive_rows
    G, dB_T_y, g_theta = direction_derivatives(problem, solution, active, direction)

    F_delta = None
    if not config.prune_inactive and inactive.size:
        first, second = _inactive_derivatives(active_set, config)
        moved = np.zeros(inactive.shape[0])
        F_delta = np.zeros(n)
        if direction.dC is not None:
            F_delta += direction.dC[inactive].T @ first
            moved += direction.dC[inactive] @ solution.z_star
        if direction.dd is not None:
            moved -= direction.dd[inactive]
        F_delta += np.asarray(problem.C[inactive].T @ (second * moved)).ravel()
        F_delta = F_delta[:, None]

    B = stack_active_rows(problem, active_set)
    W = penalty_weights(problem, active_set, config)
    penalty_term = np.asarray(B.T @ (W * g_theta)).ravel() / config.delta
    return RhsAssembly(
        block=DIRECTION,
        G=G[:, None],
        dB_T_y=dB_T_y[:, None],
        penalty_term=penalty_term[:, None],
        y_star=np.concatenate([solution.nu_star, solution.mu_star[active]]),
        g_theta=g_theta[:, None],
        F_delta=F_delta,
    )
