import numpy as np

from dxpp import config
from dxpp.controllers.report import RunReport
from dxpp.core.active_set import classify_active_set, set_penalty_weights
from dxpp.core.benchgen import gen_random_qp
from dxpp.core.exceptions import DxppError
from dxpp.core.kkt import kkt_jacobian_reduced, relative_discrepancy
from dxpp.core.penalty import assemble_hessian, assemble_rhs, solve_jacobian
from dxpp.core.problem import normalize_blocks
from dxpp.core.solvers import solve

DELTAS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
FIELDNAMES = ['delta', 'eps_rel', 'eps_rel_unpruned', 'margin', 'margin_warning',
              'error', 'message']


def penalty_jacobian(problem, solution, active_set, blocks, delta, prune_inactive):
    """:return: (Jacobian of the blocks side by side, margin warning flag)"""
    penalty = set_penalty_weights(
        solution, config=config.penalty_config(delta=delta, prune_inactive=prune_inactive)
    )
    hessian = assemble_hessian(problem, solution, active_set, penalty)
    result = solve_jacobian(hessian, [
        assemble_rhs(problem, solution, active_set, penalty, block) for block in blocks
    ])
    return result.jacobian(blocks), result.margin_warning


def run_delta_sweep(n, m, seed, deltas=DELTAS, blocks='q', solver_choice=None):
    """
    Discrepancy between the penalty Jacobian and the reduced KKT Jacobian of one random QP
    as the smoothing strength decreases, with and without pruning.

    :return: RunReport with one row per delta
    """
    report = RunReport(fieldnames=FIELDNAMES)
    blocks = normalize_blocks(blocks)
    problem = gen_random_qp(n, m, seed).problem
    try:
        solution = solve(problem, solver_choice=solver_choice).raise_for_status()
    except DxppError as e:
        report.failures.add({'delta': ''}, e)
        return report

    active_set = classify_active_set(problem, solution)
    reference = np.hstack([
        kkt_jacobian_reduced(problem, solution, active_set, block).dz for block in blocks
    ])
    for delta in deltas:
        try:
            pruned, warning = penalty_jacobian(problem, solution, active_set, blocks, delta, True)
            unpruned, _ = penalty_jacobian(problem, solution, active_set, blocks, delta, False)
        except DxppError as e:
            report.failures.add({'delta': delta}, e)
            continue
        report.rows.append({
            'delta': delta,
            'eps_rel': relative_discrepancy(pruned, reference),
            'eps_rel_unpruned': relative_discrepancy(unpruned, reference),
            'margin': active_set.margin,
            'margin_warning': warning,
        })
    report.summary.append({'n': n, 'm': m, 'seed': seed, 'margin': active_set.margin})
    return report
