import warnings

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgWarning, lapack, lu_factor, lu_solve
from scipy.sparse.linalg import splu

from dxpp.core.logger import log

SINGULAR_RCOND = 1e-14


class SolveMode(object):
    DIRECT = 'direct'
    LEAST_SQUARES_DAMPED = 'least_squares_damped'


def indefinite_solve(K, rhs, damping=1e-10):
    """
    Solve a square, possibly singular system K X = rhs.
    LU with partial pivoting is tried first. When it reports singularity the damped
    normal equations (K'K + damping I) X = K' rhs give a least-squares solution.

    :param K: square dense array or scipy.sparse matrix
    :param rhs: vector or matrix with K.shape[0] rows
    :param damping: Tikhonov damping of the least-squares fallback
    :return: (X, residual, mode) where residual = ||K X - rhs||_F / max(1, ||rhs||_F)
    """
    rhs = np.asarray(rhs, dtype=float)
    size = K.shape[0]
    if size == 0:
        return np.zeros(rhs.shape), 0.0, SolveMode.DIRECT

    X = _lu_solve(K, rhs)
    mode = SolveMode.DIRECT
    if X is None or not np.all(np.isfinite(X)):
        log('KKT matrix of size {} is singular, using damped least squares'.format(size))
        X = _damped_least_squares(K, rhs, damping)
        mode = SolveMode.LEAST_SQUARES_DAMPED
    residual = np.linalg.norm(K @ X - rhs) / max(1.0, np.linalg.norm(rhs))
    return X, float(residual), mode


def _lu_solve(K, rhs):
    """:return: the LU solution, or None if K is numerically singular"""
    if sp.issparse(K):
        try:
            lu = splu(sp.csc_matrix(K))
        except RuntimeError:
            return None
        pivots = np.abs(lu.U.diagonal())
        if pivots.min() <= SINGULAR_RCOND * pivots.max():
            return None
        return lu.solve(rhs)

    K = np.asarray(K, dtype=float)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', LinAlgWarning)
        factor = lu_factor(K, check_finite=False)
    lu, _ = factor
    if np.any(np.diag(lu) == 0):
        return None
    anorm = np.linalg.norm(K, 1)
    rcond, info = lapack.dgecon(lu, anorm, norm='1')
    if info != 0 or rcond < SINGULAR_RCOND:
        return None
    return lu_solve(factor, rhs, check_finite=False)


def _damped_least_squares(K, rhs, damping):
    size = K.shape[1]
    if sp.issparse(K):
        K = sp.csr_matrix(K)
        normal = sp.csc_matrix(K.T @ K + damping * sp.identity(size))
        return splu(normal).solve(np.asarray(K.T @ rhs))
    K = np.asarray(K, dtype=float)
    normal = K.T @ K + damping * np.identity(size)
    return np.linalg.solve(normal, K.T @ rhs)
