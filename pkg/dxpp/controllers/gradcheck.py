from concurrent.futures import ThreadPoolExecutor

import numpy as np

from dxpp import config
from dxpp.controllers.report import RunReport
from dxpp.core.active_set import classify_active_set
from dxpp.core.benchgen import gen_random_qp
from dxpp.core.exceptions import DxppError
from dxpp.core.kkt import kkt_jacobian_reduced, relative_discrepancy
from dxpp.core.logger import log
from dxpp.core.measurement import PhaseTimer, summarize
from dxpp.core.penalty import sensitivity_jacobian
from dxpp.core.problem import normalize_blocks
from dxpp.core.solvers import solve

FIELDNAMES = ['n', 'm', 'seed', 'eps_rel', 'forward_ms', 'backward_ms', 'error', 'message']


def make_infeasible(problem):
    """:return: the problem with the contradicting rows c'z <= -1 and -c'z <= -1 added"""
    row = np.ones((1, problem.n))
    C = np.vstack([problem.dense('C'), row, -row])
    d = np.concatenate([problem.d, [-1.0, -1.0]])
    return problem.replace(C=C, d=d)


def gradcheck_instance(n, m, seed, blocks, infeasible=False, solver_choice=None):
    """
    Penalty Jacobian against the reduced KKT oracle on one random QP.

    :return: CSV row {n, m, seed, eps_rel, forward_ms, backward_ms}
    :raises SolverFailureError: if the forward solve does not reach optimality
    """
    problem = gen_random_qp(n, m, seed).problem
    if infeasible:
        problem = make_infeasible(problem)
    timer = PhaseTimer()
    solution = timer.measure('forward', solve, problem, None, solver_choice)
    solution.raise_for_status()

    blocks = normalize_blocks(blocks)
    with timer.phase('backward'):
        result = sensitivity_jacobian(problem, solution, config=config.penalty_config(),
                                      blocks=blocks)
    active_set = classify_active_set(problem, solution)
    reference = np.hstack([
        kkt_jacobian_reduced(problem, solution, active_set, block).dz for block in blocks
    ])
    return {
        'n': n,
        'm': m,
        'seed': seed,
        'eps_rel': relative_discrepancy(result.jacobian(blocks), reference),
        'forward_ms': timer.get('forward'),
        'backward_ms': timer.get('backward'),
    }


def run_gradcheck(sizes, seeds, blocks='q', inject_infeasible=None, threads=None,
                  tolerance=None, solver_choice=None):
    """
    :param sizes: list of (n, m)
    :param seeds: number of seeds per size, or an explicit list of seeds
    :param blocks: 'q' or 'all'
    :param inject_infeasible: seed whose instances are made infeasible
    :param threads: instances processed concurrently, config.threads by default
    :param tolerance: largest acceptable mean eps_rel per size, unchecked if None
    :return: RunReport
    """
    seeds = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
    threads = config.threads if threads is None else threads
    report = RunReport(fieldnames=FIELDNAMES)

    def process(job):
        n, m, seed = job
        key = {'n': n, 'm': m, 'seed': seed}
        try:
            return key, gradcheck_instance(n, m, seed, blocks, seed == inject_infeasible,
                                           solver_choice), None
        except (DxppError, np.linalg.LinAlgError, ValueError) as e:
            return key, None, e

    jobs = [(n, m, seed) for n, m in sizes for seed in seeds]
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(process, jobs))
    else:
        outcomes = [process(job) for job in jobs]

    for key, row, error in outcomes:
        if error is not None:
            log('instance {} failed: {}'.format(key, error))
            report.failures.add(key, error)
        else:
            report.rows.append(row)

    for n, m in sizes:
        values = [row['eps_rel'] for row in report.rows if (row['n'], row['m']) == (n, m)]
        stats = summarize(values)
        report.summary.append({
            'n': n,
            'm': m,
            'instances': stats['count'],
            'eps_rel_mean': stats['mean'],
            'eps_rel_std': stats['std'],
        })
        if tolerance is not None and not stats['mean'] <= tolerance:
            report.acceptance_failed = True
    return report
