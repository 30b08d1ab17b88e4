"""
The exact penalty F(z) = f(z) + rho ||Az - b||_1 + alpha ||max(Cz - d, 0)||_1 and its smoothed
version Phi(z) = f(z) + alpha sum p(Cz - d) + rho sum psi(Az - b).
"""
import numpy as np

from dxpp.core.penalty.softplus import (
    softplus,
    softplus_first,
    symmetric_softplus,
    symmetric_softplus_first,
)


def _check_weights(config):
    if not config.has_weights:
        raise ValueError('penalty weights are not set, use set_penalty_weights first')


def exact_penalty_objective(problem, z, config):
    _check_weights(config)
    z = np.asarray(z, dtype=float)
    value = problem.objective(z)
    if problem.p:
        value += config.rho * float(np.sum(np.abs(problem.A @ z - problem.b)))
    if problem.m:
        value += config.alpha * float(np.sum(np.maximum(problem.C @ z - problem.d, 0.0)))
    return value


def smoothed_penalty_objective(problem, z, config):
    """
    :return: (value, gradient) of the smoothed penalty at z
    """
    _check_weights(config)
    z = np.asarray(z, dtype=float)
    delta = config.delta
    value = problem.objective(z)
    gradient = np.asarray(problem.P @ z).ravel() + problem.q
    if problem.p:
        residual = np.asarray(problem.A @ z).ravel() - problem.b
        value += config.rho * float(np.sum(symmetric_softplus(residual, delta)))
        gradient += config.rho * np.asarray(
            problem.A.T @ symmetric_softplus_first(residual, delta)
        ).ravel()
    if problem.m:
        slack = np.asarray(problem.C @ z).ravel() - problem.d
        value += config.alpha * float(np.sum(softplus(slack, delta)))
        gradient += config.alpha * np.asarray(problem.C.T @ softplus_first(slack, delta)).ravel()
    return value, gradient
