"""
Registry of forward solvers. The built-in interior-point method is registered as
'builtin-ipm'; adapters for external solvers register themselves with register_solver.
"""
import dataclasses

import numpy as np

from dxpp.core.exceptions import SignConventionError
from dxpp.core.solvers.base import (
    QpSolution,
    QpSolver,
    SolverSettings,
    SolverStatus,
    kkt_residuals,
    stationarity_residual,
)
from dxpp.core.solvers.ipm import InteriorPointSolver

_registry = {}


def register_solver(name, factory):
    """
    :param name: value accepted as solver_choice
    :param factory: callable without arguments returning a fresh QpSolver
    """
    _registry[name] = factory


def available_solvers():
    return sorted(_registry)


def get_solver(name):
    """:return: a new solver instance"""
    try:
        factory = _registry[name]
    except KeyError:
        raise ValueError(
            'unknown solver {!r}, available: {}'.format(name, ', '.join(available_solvers()))
        )
    return factory()


register_solver(InteriorPointSolver.name, InteriorPointSolver)


def solve(problem, settings=None, solver_choice=None):
    """
    Solve the QP with the chosen solver. The residuals of the returned solution are
    recomputed from (z, nu, mu), so adapters are held to the same convention as the
    built-in solver.

    :param problem: QpProblem
    :param settings: SolverSettings, the configured ones by default
    :param solver_choice: registered solver name, the configured one by default
    :return: QpSolution, check its status or call raise_for_status()
    :raises SignConventionError: if an adapter's multipliers only satisfy stationarity
        with flipped signs
    """
    from dxpp import config

    if settings is None:
        settings = config.solver_settings()
    solver = get_solver(solver_choice or config.solver)
    solution = solver.solve(problem, settings)
    if isinstance(solver, InteriorPointSolver):
        return solution

    z = np.asarray(solution.z_star, dtype=float)
    nu = np.asarray(solution.nu_star, dtype=float).reshape(problem.p)
    mu = np.asarray(solution.mu_star, dtype=float).reshape(problem.m)
    primal, dual, complementarity = kkt_residuals(problem, z, nu, mu)
    status = solution.status
    if status is SolverStatus.OPTIMAL and max(primal, dual, complementarity) > settings.eps_abs:
        if (problem.p or problem.m) and stationarity_residual(problem, z, -nu, -mu) <= settings.eps_abs:
            raise SignConventionError(
                'solver {!r} returns multipliers with flipped signs'.format(solver_choice)
            )
        status = SolverStatus.NUMERICAL_FAILURE
    return dataclasses.replace(
        solution,
        z_star=z,
        nu_star=nu,
        mu_star=mu,
        status=status,
        primal_residual=primal,
        dual_residual=dual,
        complementarity_residual=complementarity,
        solver=solution.solver or solver_choice or config.solver,
    )
