"""
Scalability benchmark: wall-clock forward and backward times per size, with the reduced
KKT backward as baseline. Repetitions run serially.
"""
import numpy as np

from dxpp import config
from dxpp.controllers.report import RunReport
from dxpp.core.active_set import classify_active_set, set_penalty_weights
from dxpp.core.benchgen import (
    Family,
    gen_chain_projection,
    gen_portfolio_qp,
    gen_simplex_projection,
    make_rng,
)
from dxpp.core.exceptions import DxppError
from dxpp.core.kkt import kkt_vjp
from dxpp.core.logger import log
from dxpp.core.measurement import Deadline, PhaseTimer, scaling_exponent, summarize
from dxpp.core.penalty import assemble_hessian, vjp
from dxpp.core.solvers import solve

FIELDNAMES = ['family', 'size', 'n', 'rep', 'forward_ms', 'backward_ms', 'kkt_backward_ms',
              'total_ms', 'error', 'message']

# the gradient blocks of a projection layer: q carries the input point
VJP_BLOCKS = ('q', 'b', 'd')

CHAIN_POINTS = 100
PORTFOLIO_ASSETS = 7
RISK_AVERSION = 1.0
TURNOVER = 0.5


def bench_instance(family, size, seed, points=CHAIN_POINTS, assets=PORTFOLIO_ASSETS):
    """
    :param size: n for simplex, the dimension for chain, the horizon for portfolio
    :return: BenchInstance
    """
    family = Family(family)
    if family is Family.SIMPLEX:
        return gen_simplex_projection(size, seed)
    if family is Family.CHAIN:
        return gen_chain_projection(points, size, seed)
    if family is Family.PORTFOLIO:
        return gen_portfolio_qp(size, assets, RISK_AVERSION, TURNOVER, seed)
    raise ValueError('bench supports simplex, chain and portfolio, not {}'.format(family.value))


def time_repetition(problem, r, with_kkt=True, solver_choice=None):
    """
    One forward solve and the backward passes of the loss gradient r.
    :return: PhaseTimer with the phases forward, backward and kkt_backward
    """
    timer = PhaseTimer()
    solution = timer.measure('forward', solve, problem, None, solver_choice)
    solution.raise_for_status()
    with timer.phase('backward'):
        active_set = classify_active_set(problem, solution)
        penalty = set_penalty_weights(solution, config=config.penalty_config())
        hessian = assemble_hessian(problem, solution, active_set, penalty)
        vjp(hessian, problem, solution, active_set, penalty, r, blocks=VJP_BLOCKS)
    if with_kkt:
        with timer.phase('kkt_backward'):
            active_set = classify_active_set(problem, solution)
            kkt_vjp(problem, solution, active_set, r, blocks=VJP_BLOCKS)
    return timer


def run_bench(family, sizes, repetitions=None, timeout=None, seed=0, with_kkt=True,
              points=CHAIN_POINTS, assets=PORTFOLIO_ASSETS, solver_choice=None):
    """
    :param family: simplex, chain or portfolio
    :param sizes: list of sizes, see bench_instance
    :param repetitions: timing repetitions per size, config.repetitions by default
    :param timeout: seconds per size, config.timeout by default; checked between repetitions
    :return: RunReport with one row per repetition, a summary per size and the fitted
        exponent of the median backward time against n
    """
    family = Family(family)
    repetitions = config.repetitions if repetitions is None else repetitions
    timeout = config.timeout if timeout is None else timeout
    report = RunReport(fieldnames=FIELDNAMES)

    for size in sizes:
        key = {'family': family.value, 'size': size}
        try:
            instance = bench_instance(family, size, seed, points, assets)
        except (DxppError, ValueError) as e:
            report.failures.add(key, e)
            continue
        problem = instance.problem
        r = make_rng(seed).standard_normal(problem.n)
        deadline = Deadline(timeout)
        rows = []
        for rep in range(repetitions):
            if deadline.expired():
                log('{} size {} timed out after {} repetitions'.format(family.value, size, rep))
                report.failures.add(dict(key, n=problem.n, rep=rep), TimeoutError(
                    'timeout of {} s exceeded'.format(timeout)))
                break
            try:
                timer = time_repetition(problem, r, with_kkt, solver_choice)
            except (DxppError, np.linalg.LinAlgError, ValueError) as e:
                report.failures.add(dict(key, n=problem.n, rep=rep), e)
                break
            rows.append(dict(
                key,
                n=problem.n,
                rep=rep,
                forward_ms=timer.get('forward'),
                backward_ms=timer.get('backward'),
                kkt_backward_ms=timer.get('kkt_backward') if with_kkt else np.nan,
                total_ms=timer.get('forward') + timer.get('backward'),
            ))
        report.rows.extend(rows)
        if rows:
            report.summary.append(_summarize_size(family, size, problem.n, rows))

    report.extra['backward_exponent'] = scaling_exponent(
        [entry['n'] for entry in report.summary],
        [entry['backward_ms_median'] for entry in report.summary],
    )
    return report


def _summarize_size(family, size, n, rows):
    entry = {'family': family.value, 'size': size, 'n': n, 'repetitions': len(rows)}
    for column in ('forward_ms', 'backward_ms', 'kkt_backward_ms', 'total_ms'):
        stats = summarize(row[column] for row in rows)
        entry[column + '_median'] = stats['median']
        entry[column + '_mean'] = stats['mean']
    if entry['backward_ms_median'] > 0:
        entry['kkt_ratio'] = entry['kkt_backward_ms_median'] / entry['backward_ms_median']
    else:
        entry['kkt_ratio'] = np.nan
    return entry
