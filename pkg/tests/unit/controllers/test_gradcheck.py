import pytest

from dxpp.controllers.gradcheck import make_infeasible, run_gradcheck
from dxpp.core.solvers import solve


def test_run_gradcheck(config):
    report = run_gradcheck([(10, 5)], 2, blocks='q')
    assert report.exit_code() == 0
    assert [row['seed'] for row in report.rows] == [0, 1]
    assert all(row['eps_rel'] < 1e-3 for row in report.rows)
    assert all(row['forward_ms'] > 0 for row in report.rows)
    summary, = report.summary
    assert summary['instances'] == 2
    assert summary['eps_rel_mean'] < 1e-3


def test_mean_discrepancy_over_fifty_seeds(config):
    report = run_gradcheck([(10, 5)], 50, blocks='q')
    assert report.exit_code() == 0
    summary, = report.summary
    assert summary['instances'] == 50
    assert summary['eps_rel_mean'] <= 1e-5


def test_all_blocks(config):
    report = run_gradcheck([(6, 3)], [0], blocks='all')
    assert report.exit_code() == 0
    assert report.rows[0]['eps_rel'] < 1e-3


def test_injected_infeasibility(config):
    report = run_gradcheck([(10, 5)], 3, inject_infeasible=1)
    assert report.exit_code() == 1
    assert len(report.rows) == 2
    failure, = report.failures.rows()
    assert failure['seed'] == 1
    assert failure['error'] == 'SolverFailureError'
    assert report.all_rows()[-1] == failure


def test_make_infeasible(random_qp):
    problem = make_infeasible(random_qp.problem)
    assert problem.m == random_qp.problem.m + 2
    assert not solve(problem).is_optimal


@pytest.mark.parametrize('threads', [1, 3])
def test_threads(config, threads):
    report = run_gradcheck([(8, 4)], 4, threads=threads)
    assert [row['seed'] for row in report.rows] == [0, 1, 2, 3]


def test_threads_agree(config):
    serial = run_gradcheck([(8, 4)], 3, threads=1)
    parallel = run_gradcheck([(8, 4)], 3, threads=3)
    assert [row['eps_rel'] for row in serial.rows] == [row['eps_rel'] for row in parallel.rows]


def test_tolerance(config):
    assert run_gradcheck([(10, 5)], 2, tolerance=1.0).exit_code() == 0
    report = run_gradcheck([(10, 5)], 2, tolerance=0.0)
    assert report.acceptance_failed
    assert report.exit_code() == 1
