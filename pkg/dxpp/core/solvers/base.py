import dataclasses
from abc import ABCMeta, abstractmethod
from enum import Enum

import numpy as np

from dxpp.core.exceptions import SolverFailureError


class SolverStatus(Enum):
    OPTIMAL = 'optimal'
    MAX_ITER = 'max_iter'
    INFEASIBLE = 'infeasible'
    NUMERICAL_FAILURE = 'numerical_failure'


@dataclasses.dataclass(frozen=True)
class SolverSettings:
    eps_abs: float = 1e-6
    max_iterations: int = 200
    regularization_floor: float = 1e-10

    def __post_init__(self):
        if not self.eps_abs > 0:
            raise ValueError('eps_abs must be positive, got {}'.format(self.eps_abs))
        if self.max_iterations < 1:
            raise ValueError('max_iterations must be at least 1, got {}'.format(self.max_iterations))
        if self.regularization_floor < 0:
            raise ValueError('regularization_floor must be nonnegative')


@dataclasses.dataclass(frozen=True, eq=False)
class QpSolution:
    """
    Primal-dual point of the QP with multipliers in the convention
    P z + q + A'nu + C'mu = 0, mu >= 0.
    """

    z_star: np.ndarray
    nu_star: np.ndarray
    mu_star: np.ndarray
    status: SolverStatus
    primal_residual: float = np.inf
    dual_residual: float = np.inf
    complementarity_residual: float = np.inf
    iterations: int = 0
    solver: str = ''

    @property
    def is_optimal(self):
        return self.status is SolverStatus.OPTIMAL

    def raise_for_status(self):
        """:raises SolverFailureError: unless the status is optimal"""
        if not self.is_optimal:
            raise SolverFailureError(self)
        return self


def kkt_residuals(problem, z, nu, mu):
    """
    The residual groups of the optimality conditions, in the infinity norm.

    :return: (primal, dual, complementarity) where primal covers Az = b and Cz <= d,
        dual covers stationarity and mu >= 0, complementarity is max |mu_i (Cz - d)_i|
    """
    z = np.asarray(z, dtype=float)
    nu = np.asarray(nu, dtype=float)
    mu = np.asarray(mu, dtype=float)
    primal = 0.0
    if problem.p:
        primal = max(primal, float(np.max(np.abs(problem.A @ z - problem.b))))
    slack = problem.C @ z - problem.d if problem.m else np.zeros(0)
    if problem.m:
        primal = max(primal, float(np.max(np.maximum(slack, 0.0))))

    stationarity = np.asarray(problem.P @ z).ravel() + problem.q
    if problem.p:
        stationarity = stationarity + np.asarray(problem.A.T @ nu).ravel()
    if problem.m:
        stationarity = stationarity + np.asarray(problem.C.T @ mu).ravel()
    dual = float(np.max(np.abs(stationarity))) if problem.n else 0.0
    if problem.m:
        dual = max(dual, float(np.max(np.maximum(-mu, 0.0))))

    complementarity = float(np.max(np.abs(mu * slack))) if problem.m else 0.0
    return primal, dual, complementarity


def stationarity_residual(problem, z, nu, mu):
    """:return: ||P z + q + A'nu + C'mu||_inf"""
    residual = np.asarray(problem.P @ z).ravel() + problem.q
    if problem.p:
        residual = residual + np.asarray(problem.A.T @ nu).ravel()
    if problem.m:
        residual = residual + np.asarray(problem.C.T @ mu).ravel()
    return float(np.max(np.abs(residual))) if residual.size else 0.0


class QpSolver(metaclass=ABCMeta):
    """
    Contract of a forward solver. Implementations hold mutable workspaces, so use one
    instance per solve; the registry creates a fresh instance for every call.
    """

    name = None

    @abstractmethod
    def solve(self, problem, settings):
        """
        :param problem: QpProblem
        :param settings: SolverSettings
        :return: QpSolution with duals in the convention P z + q + A'nu + C'mu = 0
        """
        pass
