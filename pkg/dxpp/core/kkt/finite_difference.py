from concurrent.futures import ThreadPoolExecutor

import numpy as np

from dxpp.core.problem import block_shape, block_size
from dxpp.core.solvers import solve
from dxpp.core.solvers.base import SolverSettings


def perturb(problem, param_block, index, step):
    """
    :return: the problem with scalar parameter `index` of the block moved by `step`;
        P moves along (E_ij + E_ji) / 2 so it stays symmetric
    """
    data = np.array(problem.dense(param_block), dtype=float)
    shape = block_shape(problem, param_block)
    if param_block == 'P':
        i, j = divmod(index, shape[1])
        data[i, j] += 0.5 * step
        data[j, i] += 0.5 * step
    else:
        data.reshape(-1)[index] += step
    return problem.replace(**{param_block: data})


def finite_difference_jacobian(problem, param_block, h=None, tight_settings=None,
                               threads=None, solver_choice=None):
    """
    Central differences (z*(theta + h e_k) - z*(theta - h e_k)) / 2h for every scalar
    parameter of a data block, re-solving the QP at each perturbed point.

    :param h: step, config.fd_step by default
    :param tight_settings: SolverSettings of the re-solves, eps_abs = config.fd_eps_abs by default
    :param threads: number of concurrent re-solves, config.threads by default
    :return: n x s matrix
    :raises SolverFailureError: if a perturbed problem is not solved to optimality
    """
    from dxpp import config

    h = config.fd_step if h is None else h
    if tight_settings is None:
        tight_settings = SolverSettings(
            eps_abs=config.fd_eps_abs,
            max_iterations=config.max_iterations,
            regularization_floor=config.regularization_floor,
        )
    threads = config.threads if threads is None else threads

    def column(index):
        upper = solve(perturb(problem, param_block, index, h), tight_settings, solver_choice)
        lower = solve(perturb(problem, param_block, index, -h), tight_settings, solver_choice)
        upper.raise_for_status()
        lower.raise_for_status()
        return (upper.z_star - lower.z_star) / (2.0 * h)

    indices = range(block_size(problem, param_block))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            columns = list(executor.map(column, indices))
    else:
        columns = [column(index) for index in indices]
    if not columns:
        return np.zeros((problem.n, 0))
    return np.column_stack(columns)
