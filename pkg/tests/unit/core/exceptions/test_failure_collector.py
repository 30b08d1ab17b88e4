from dxpp.core.exceptions import SolverFailureError, ZeroDenominatorError
from dxpp.core.exceptions.failure_collector import FailureCollector
from dxpp.core.solvers.base import QpSolution, SolverStatus


def test_empty_collector():
    collector = FailureCollector()
    assert not collector
    assert len(collector) == 0
    assert collector.rows() == []
    assert collector.exit_code() == 0


def test_collector_rows():
    solution = QpSolution(z_star=None, nu_star=None, mu_star=None,
                          status=SolverStatus.INFEASIBLE)
    collector = FailureCollector()
    collector.add({'n': 10, 'seed': 3}, SolverFailureError(solution))
    collector.add({'n': 10, 'seed': 4}, ZeroDenominatorError('zero\nreference'))

    assert collector
    assert collector.exit_code() == 1
    first, second = collector.rows()
    assert first == {'n': 10, 'seed': 3, 'error': 'SolverFailureError',
                     'message': 'forward solve ended with status infeasible'}
    assert second['message'] == 'zero reference'
