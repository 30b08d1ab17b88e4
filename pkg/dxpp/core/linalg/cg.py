import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator, cg

from dxpp.core.exceptions import ConvergenceError


class JacobiCg(object):
    """
    Conjugate gradient on an SPD matrix or matrix-free operator, preconditioned with the
    inverse of its diagonal.
    """

    def __init__(self, M, diagonal, tolerance=1e-10, max_iterations=None):
        """
        :param M: SPD matrix or LinearOperator
        :param diagonal: positive diagonal of M
        :param tolerance: relative residual ||M x - rhs|| <= tolerance * ||rhs||
        :param max_iterations: iteration cap per right-hand side, 10 n by default
        """
        self.operator = M if isinstance(M, LinearOperator) else aslinearoperator(M)
        self.n = self.operator.shape[0]
        inverse_diagonal = 1.0 / np.asarray(diagonal, dtype=float)
        self.preconditioner = LinearOperator(
            (self.n, self.n), matvec=lambda x: inverse_diagonal * np.ravel(x), dtype=float
        )
        self.tolerance = tolerance
        self.max_iterations = max_iterations or 10 * self.n

    def solve_vector(self, rhs):
        if not np.any(rhs):
            return np.zeros(self.n)
        x, info = cg(
            self.operator,
            rhs,
            rtol=self.tolerance,
            atol=0.0,
            maxiter=self.max_iterations,
            M=self.preconditioner,
        )
        if info != 0:
            residual = np.linalg.norm(self.operator.matvec(x) - rhs) / np.linalg.norm(rhs)
            raise ConvergenceError(self.max_iterations if info > 0 else info, residual)
        return x

    def solve(self, rhs):
        """Solve column by column; rhs is an n-vector or an n x k matrix"""
        rhs = np.asarray(rhs, dtype=float)
        if rhs.ndim == 1:
            return self.solve_vector(rhs)
        return np.column_stack([self.solve_vector(rhs[:, k]) for k in range(rhs.shape[1])])
