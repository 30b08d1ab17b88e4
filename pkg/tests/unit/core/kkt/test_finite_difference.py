import numpy as np
import pytest

from dxpp.core.active_set import classify_active_set
from dxpp.core.exceptions import SolverFailureError, ZeroDenominatorError
from dxpp.core.kkt import finite_difference_jacobian, kkt_jacobian_reduced, relative_discrepancy
from dxpp.core.kkt.finite_difference import perturb
from dxpp.core.penalty import sensitivity_jacobian
from dxpp.core.solvers import solve
from dxpp.core.solvers.base import SolverSettings
from tests.fixtures.problems import HAND_DZ_DB, HAND_DZ_DQ


def test_perturb(hand_problem):
    moved = perturb(hand_problem, 'P', 1, 0.2)
    np.testing.assert_allclose(moved.P[0, 1], 0.1)
    np.testing.assert_allclose(moved.P[1, 0], 0.1)
    moved = perturb(hand_problem, 'C', 4, -1.0)
    assert moved.C[1, 1] == 0.0
    np.testing.assert_array_equal(hand_problem.C[1], [0.0, 1.0, 0.0])


def test_hand_problem(hand_problem, config):
    np.testing.assert_allclose(finite_difference_jacobian(hand_problem, 'q', h=1e-3),
                               HAND_DZ_DQ, atol=1e-6)
    np.testing.assert_allclose(finite_difference_jacobian(hand_problem, 'b', h=1e-3),
                               HAND_DZ_DB, atol=1e-6)


@pytest.mark.parametrize('threads', [1, 3])
def test_agrees_with_kkt(random_qp, config, threads):
    problem = random_qp.problem
    solution = solve(problem, SolverSettings(eps_abs=1e-10)).raise_for_status()
    active_set = classify_active_set(problem, solution)
    reference = kkt_jacobian_reduced(problem, solution, active_set, 'q').dz
    jacobian = finite_difference_jacobian(problem, 'q', h=1e-5, threads=threads)
    assert jacobian.shape == (problem.n, problem.n)
    assert relative_discrepancy(jacobian, reference) < 1e-3


@pytest.mark.parametrize('random_qp__seed', range(20))
def test_three_oracles_agree(random_qp, config):
    problem = random_qp.problem
    solution = solve(problem, SolverSettings(eps_abs=1e-10)).raise_for_status()
    active_set = classify_active_set(problem, solution)
    if active_set.margin < 1e-3 or np.any(solution.mu_star[active_set.active_rows] <= 1e-6):
        pytest.skip('weakly active or nearly active constraint')
    penalty = sensitivity_jacobian(problem, solution, config=config.penalty_config())
    for block in ('P', 'q', 'A', 'b', 'C', 'd'):
        reference = kkt_jacobian_reduced(problem, solution, active_set, block).dz
        if not np.any(reference):
            continue
        differences = finite_difference_jacobian(problem, block)
        smoothed = penalty.jacobian_blocks[block]
        assert relative_discrepancy(smoothed, reference) < 1e-4, block
        assert relative_discrepancy(differences, reference) < 1e-4, block
        assert relative_discrepancy(differences, smoothed) < 1e-4, block


def test_empty_block(unconstrained_problem, config):
    assert finite_difference_jacobian(unconstrained_problem, 'd').shape == (2, 0)


def test_failed_resolve(hand_problem, config):
    with pytest.raises(SolverFailureError):
        finite_difference_jacobian(hand_problem, 'q', tight_settings=SolverSettings(
            max_iterations=1))


def test_relative_discrepancy():
    assert relative_discrepancy([1.0, 0.0], [1.0, 0.0]) == 0.0
    assert relative_discrepancy([3.0, 4.0], [0.0, 5.0]) == pytest.approx(np.sqrt(10.0) / 5.0)
    assert relative_discrepancy(np.ones((2, 2)), 2 * np.ones((2, 2))) == pytest.approx(0.5)
    with pytest.raises(ZeroDenominatorError):
        relative_discrepancy([1.0], [0.0])
    with pytest.raises(ValueError):
        relative_discrepancy([1.0, 2.0], [1.0])
