"""
Reference sensitivities from differentiating the KKT conditions directly. Used to validate
the penalty backward pass, not on the fast path.
"""
import dataclasses
from typing import Optional

import numpy as np
import scipy.sparse as sp

from dxpp.core.linalg.indefinite import SolveMode, indefinite_solve
from dxpp.core.penalty.hessian import stack_active_rows
from dxpp.core.penalty.rhs import data_derivatives
from dxpp.core.problem import DataGradient, normalize_blocks


@dataclasses.dataclass(frozen=True, eq=False)
class KktJacobian:
    """
    Sensitivities of (z*, nu*, mu*_A) for one data block. The multipliers of inactive rows
    do not move, so only the active ones are stored.
    """

    dz: np.ndarray
    dnu: np.ndarray
    dmu_active: np.ndarray
    solve_mode: str
    residual: float
    active_rows: Optional[np.ndarray] = None

    @property
    def is_singular(self):
        return self.solve_mode != SolveMode.DIRECT

    def dmu(self, m):
        """:return: m x s sensitivity of mu*, zero on the inactive rows"""
        dmu = np.zeros((m, self.dz.shape[1]))
        dmu[self.active_rows] = self.dmu_active
        return dmu


def _damping(damping):
    if damping is None:
        from dxpp import config

        return config.damping
    return damping


def reduced_kkt_matrix(problem, active_set):
    """:return: [[P, B'], [B, 0]] with B = [A; C_A], sparse when the problem is"""
    B = stack_active_rows(problem, active_set)
    if problem.is_sparse:
        return sp.csc_matrix(sp.bmat([[problem.P, B.T], [B, None]], format='csc')) \
            if B.shape[0] else sp.csc_matrix(problem.P)
    k = B.shape[0]
    return np.block([[problem.P, B.T], [B, np.zeros((k, k))]])


def kkt_jacobian_reduced(problem, solution, active_set, param_block, damping=None):
    """
    Solve the reduced system of the active constraints

        [P  B'] [Z     ]     [G + (dB')y]
        [B  0 ] [dy    ] = - [g_theta   ]

    falling back to damped least squares when the matrix is singular (dependent active
    rows or weakly active constraints).

    :return: KktJacobian
    """
    n, p = problem.n, problem.p
    rows = active_set.active_rows
    G, dB_T_y, g_theta = data_derivatives(problem, solution, rows, param_block)
    K = reduced_kkt_matrix(problem, active_set)
    rhs = -np.vstack([G + dB_T_y, g_theta])
    X, residual, mode = indefinite_solve(K, rhs, _damping(damping))
    return KktJacobian(
        dz=X[:n],
        dnu=X[n:n + p],
        dmu_active=X[n + p:],
        solve_mode=mode,
        residual=residual,
        active_rows=rows,
    )


def full_kkt_matrix(problem, solution):
    """
    :return: [[P, A', C'], [A, 0, 0], [diag(mu) C, 0, diag(Cz - d)]], the derivative of the
        optimality conditions with complementarity in product form
    """
    n, p, m = problem.n, problem.p, problem.m
    slack = np.asarray(problem.C @ solution.z_star).ravel() - problem.d
    mu = solution.mu_star
    if problem.is_sparse:
        blocks = [[problem.P, problem.A.T if p else None, problem.C.T if m else None]]
        if p:
            blocks.append([problem.A, sp.csr_matrix((p, p)) if p else None,
                           sp.csr_matrix((p, m)) if m else None])
        if m:
            blocks.append([sp.diags(mu) @ problem.C, sp.csr_matrix((m, p)) if p else None,
                           sp.diags(slack)])
        blocks = [[block for block in row if block is not None] for row in blocks]
        return sp.csc_matrix(sp.bmat(blocks))
    A, C = problem.A, problem.C
    return np.block([
        [problem.P, A.T, C.T],
        [A, np.zeros((p, p)), np.zeros((p, m))],
        [mu[:, None] * C, np.zeros((m, p)), np.diag(slack)],
    ])


def kkt_jacobian_full(problem, solution, param_block, damping=None):
    """
    Solve the full (n + p + m) derivative system of the optimality conditions without an
    active set. Singular under weak activity, which is reported through solve_mode.

    :return: KktJacobian whose dmu_active covers all m rows
    """
    n, p, m = problem.n, problem.p, problem.m
    all_rows = np.arange(m)
    G, dC_T_y, g_theta = data_derivatives(problem, solution, all_rows, param_block)
    # the complementarity rows are diag(mu) d(Cz - d)
    g_theta[p:] *= solution.mu_star[:, None]
    K = full_kkt_matrix(problem, solution)
    X, residual, mode = indefinite_solve(K, -np.vstack([G + dC_T_y, g_theta]), _damping(damping))
    return KktJacobian(
        dz=X[:n],
        dnu=X[n:n + p],
        dmu_active=X[n + p:],
        solve_mode=mode,
        residual=residual,
        active_rows=all_rows,
    )


def kkt_vjp(problem, solution, active_set, r, blocks=('q', 'b', 'd'), damping=None):
    """
    Vector-Jacobian product through the reduced KKT system with a single solve
    K w = [r; 0], using the symmetry of K.

    :param r: n-vector, gradient of the loss with respect to z*
    :param blocks: data blocks to compute
    :return: (DataGradient, solve_mode)
    """
    n, p = problem.n, problem.p
    rows = active_set.active_rows
    k = rows.shape[0]
    blocks = normalize_blocks(blocks)
    K = reduced_kkt_matrix(problem, active_set)
    rhs = np.concatenate([np.asarray(r, dtype=float), np.zeros(p + k)])
    w, _, mode = indefinite_solve(K, rhs, _damping(damping))
    w_z, w_nu, w_mu = w[:n], w[n:n + p], w[n + p:]
    z, nu, mu = solution.z_star, solution.nu_star, solution.mu_star

    gradient = DataGradient()
    if 'q' in blocks:
        gradient.dq = -w_z
    if 'b' in blocks:
        gradient.db = w_nu
    if 'd' in blocks:
        dd = np.zeros(problem.m)
        dd[rows] = w_mu
        gradient.dd = dd
    if 'A' in blocks:
        gradient.dA = -(np.outer(nu, w_z) + np.outer(w_nu, z))
    if 'C' in blocks:
        dC = np.zeros((problem.m, n))
        dC[rows] = -(np.outer(mu[rows], w_z) + np.outer(w_mu, z))
        gradient.dC = dC
    if 'P' in blocks:
        gradient.dP = -0.5 * (np.outer(w_z, z) + np.outer(z, w_z))
    return gradient, mode
