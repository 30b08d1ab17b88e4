"""
Primal-dual interior-point method with Mehrotra predictor-corrector steps.

The inequalities get slacks s >= 0 with Cz + s = d. Each iteration eliminates the slack
and multiplier steps and factorizes the quasi-definite system

    [ P + C'DC + reg I    A'     ] [dz]
    [ A                 -reg I   ] [dnu]

with D = diag(mu / s) once, then solves it for the predictor and for the corrector.
"""
import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, lu_factor, lu_solve
from scipy.sparse.linalg import splu

from dxpp.core.logger import log
from dxpp.core.solvers.base import QpSolution, QpSolver, SolverStatus, kkt_residuals

FRACTION_TO_BOUNDARY = 0.99
MULTIPLIER_BLOWUP = 1e12
STAGNATION_WINDOW = 30
MIN_STEP = 1e-12


class _AugmentedSystem(object):
    """LU factor of the reduced Newton system for one value of D."""

    def __init__(self, problem, D, reg):
        n, p = problem.n, problem.p
        self.n = n
        P, A, C = problem.P, problem.A, problem.C
        if problem.is_sparse:
            H = P + reg * sp.identity(n, format='csr')
            if problem.m:
                H = H + C.T @ sp.diags(D) @ C
            K = H if p == 0 else sp.bmat([[H, A.T], [A, -reg * sp.identity(p)]])
            self._lu = splu(sp.csc_matrix(K))
            self._solve = self._lu.solve
        else:
            H = P + reg * np.identity(n)
            if problem.m:
                H = H + C.T @ (D[:, None] * C)
            K = H if p == 0 else np.block([[H, A.T], [A, -reg * np.identity(p)]])
            factor = lu_factor(K, check_finite=False)
            if np.any(np.diag(factor[0]) == 0):
                raise LinAlgError('singular Newton system')
            self._solve = lambda rhs: lu_solve(factor, rhs, check_finite=False)

    def solve(self, top, bottom):
        solution = self._solve(np.concatenate([top, bottom]))
        if not np.all(np.isfinite(solution)):
            raise LinAlgError('non-finite Newton step')
        return solution[:self.n], solution[self.n:]


def _max_step(value, step):
    """Largest a in (0, 1] with value + a * step >= 0."""
    negative = step < 0
    if not np.any(negative):
        return 1.0
    return min(1.0, float(np.min(-value[negative] / step[negative])))


class InteriorPointSolver(QpSolver):
    name = 'builtin-ipm'

    def solve(self, problem, settings):
        n, p, m = problem.n, problem.p, problem.m
        P, q, A, b, C, d = problem.P, problem.q, problem.A, problem.b, problem.C, problem.d
        reg = settings.regularization_floor

        def matvec(M, x):
            return np.asarray(M @ x).ravel()

        def finish(status, z, nu, mu, iterations):
            primal, dual, complementarity = kkt_residuals(problem, z, nu, mu)
            log('{}: {} after {} iterations (primal {:.2e}, dual {:.2e}, compl {:.2e})'.format(
                self.name, status.value, iterations, primal, dual, complementarity))
            return QpSolution(
                z_star=z,
                nu_star=nu,
                mu_star=mu,
                status=status,
                primal_residual=primal,
                dual_residual=dual,
                complementarity_residual=complementarity,
                iterations=iterations,
                solver=self.name,
            )

        try:
            system = _AugmentedSystem(problem, np.ones(m), reg)
            z, nu = system.solve(-q, b)
        except (LinAlgError, RuntimeError, ValueError):
            return finish(SolverStatus.NUMERICAL_FAILURE, np.zeros(n), np.zeros(p), np.zeros(m), 0)
        s = np.maximum(d - matvec(C, z), 1.0) if m else np.zeros(0)
        mu = np.ones(m)

        history = []
        small_steps = 0
        for iteration in range(1, settings.max_iterations + 1):
            primal, dual, complementarity = kkt_residuals(problem, z, nu, mu)
            if max(primal, dual, complementarity) <= settings.eps_abs:
                return finish(SolverStatus.OPTIMAL, z, nu, mu, iteration - 1)
            if not np.isfinite(primal + dual + complementarity):
                return finish(SolverStatus.NUMERICAL_FAILURE, z, nu, mu, iteration - 1)
            if m and mu.max() > MULTIPLIER_BLOWUP:
                return finish(SolverStatus.INFEASIBLE, z, nu, mu, iteration - 1)
            history.append(primal)

            r_dual = matvec(P, z) + q
            if p:
                r_dual += matvec(A.T, nu)
            if m:
                r_dual += matvec(C.T, mu)
            r_primal = matvec(A, z) - b if p else np.zeros(0)
            r_ineq = matvec(C, z) + s - d if m else np.zeros(0)

            D = mu / s if m else np.zeros(0)
            try:
                system = _AugmentedSystem(problem, D, reg)

                def newton(r_compl):
                    top = -r_dual
                    if m:
                        top = top + matvec(C.T, r_compl / s - D * r_ineq)
                    dz, dnu = system.solve(top, -r_primal)
                    if not m:
                        return dz, dnu, np.zeros(0), np.zeros(0)
                    ds = -r_ineq - matvec(C, dz)
                    dmu = -(r_compl + mu * ds) / s
                    return dz, dnu, ds, dmu

                if m:
                    gap = float(mu @ s) / m
                    dz, dnu, ds, dmu = newton(mu * s)
                    step = min(_max_step(s, ds), _max_step(mu, dmu))
                    gap_affine = float((mu + step * dmu) @ (s + step * ds)) / m
                    sigma = (gap_affine / gap) ** 3 if gap > 0 else 0.0
                    dz, dnu, ds, dmu = newton(mu * s + ds * dmu - sigma * gap)
                    step = min(1.0, FRACTION_TO_BOUNDARY * min(_max_step(s, ds), _max_step(mu, dmu)))
                else:
                    dz, dnu, ds, dmu = newton(np.zeros(0))
                    step = 1.0
            except (LinAlgError, RuntimeError, ValueError):
                return finish(SolverStatus.NUMERICAL_FAILURE, z, nu, mu, iteration)

            z = z + step * dz
            nu = nu + step * dnu
            if m:
                s = s + step * ds
                mu = mu + step * dmu
                # guard against exact zeros from rounding
                s = np.maximum(s, np.finfo(float).tiny)
                mu = np.maximum(mu, np.finfo(float).tiny)

            small_steps = small_steps + 1 if step < MIN_STEP else 0
            if small_steps >= 5 or self._primal_stalled(history, settings):
                return finish(SolverStatus.INFEASIBLE, z, nu, mu, iteration)

        primal, dual, complementarity = kkt_residuals(problem, z, nu, mu)
        if max(primal, dual, complementarity) <= settings.eps_abs:
            status = SolverStatus.OPTIMAL
        elif self._primal_stalled(history + [primal], settings):
            status = SolverStatus.INFEASIBLE
        else:
            status = SolverStatus.MAX_ITER
        return finish(status, z, nu, mu, settings.max_iterations)

    @staticmethod
    def _primal_stalled(history, settings):
        """
        The primal residual stayed above tolerance and shrank by less than 10% over the
        last STAGNATION_WINDOW iterations.
        """
        if len(history) < STAGNATION_WINDOW or history[-1] <= settings.eps_abs:
            return False
        return history[-1] > 0.9 * history[-STAGNATION_WINDOW]
