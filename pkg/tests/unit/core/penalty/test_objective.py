import numpy as np
import pytest

from dxpp.core.active_set import PenaltyConfig, set_penalty_weights
from dxpp.core.penalty import exact_penalty_objective, smoothed_penalty_objective
from dxpp.core.solvers import solve


@pytest.fixture
def weighted(hand_solution):
    return set_penalty_weights(hand_solution, config=PenaltyConfig(delta=0.05))


def test_exact_penalty_at_feasible_point(hand_problem, weighted):
    z = np.array([-1.0, 1.0, 1.0])
    assert exact_penalty_objective(hand_problem, z, weighted) == hand_problem.objective(z)


def test_exact_penalty_charges_violations(hand_problem, weighted):
    z = np.array([1.0, 3.0, 0.0])
    # |1'z - 1| = 3, z_1 exceeds 0 by 1 and z_2 exceeds 2 by 1
    expected = hand_problem.objective(z) + 3.0 * weighted.rho + 2.0 * weighted.alpha
    assert exact_penalty_objective(hand_problem, z, weighted) == pytest.approx(expected)


def test_smoothed_penalty_majorizes_exact_penalty(hand_problem, weighted):
    rng = np.random.default_rng(0)
    for z in rng.standard_normal((10, 3)):
        value, _ = smoothed_penalty_objective(hand_problem, z, weighted)
        assert value >= exact_penalty_objective(hand_problem, z, weighted) - 1e-12


def test_smoothed_penalty_gradient(hand_problem, sparse_hand_problem, weighted):
    z = np.array([0.02, 0.4, 0.55])
    h = 1e-6
    for problem in (hand_problem, sparse_hand_problem):
        _, gradient = smoothed_penalty_objective(problem, z, weighted)
        difference = [
            (smoothed_penalty_objective(problem, z + h * e, weighted)[0]
             - smoothed_penalty_objective(problem, z - h * e, weighted)[0]) / (2 * h)
            for e in np.identity(3)
        ]
        np.testing.assert_allclose(gradient, difference, rtol=1e-5, atol=1e-6)


def test_gradient_at_solution(hand_problem, hand_solution):
    penalty = set_penalty_weights(hand_solution, config=PenaltyConfig(delta=1e-8))
    _, gradient = smoothed_penalty_objective(hand_problem, hand_solution.z_star, penalty)
    # the smoothed terms have slope 1/2 at an active constraint
    expected = (hand_problem.q + hand_solution.z_star
                + 0.5 * penalty.alpha * np.array([1.0, 0.0, 0.0]))
    np.testing.assert_allclose(gradient, expected, atol=1e-6)


def test_weights_required(hand_problem):
    with pytest.raises(ValueError):
        exact_penalty_objective(hand_problem, np.zeros(3), PenaltyConfig())
    with pytest.raises(ValueError):
        smoothed_penalty_objective(hand_problem, np.zeros(3), PenaltyConfig())


@pytest.mark.parametrize('random_qp__n', [20])
@pytest.mark.parametrize('random_qp__m', [10])
@pytest.mark.parametrize('random_qp__seed', [0, 1, 2])
def test_solution_minimizes_exact_penalty(random_qp):
    problem = random_qp.problem
    solution = solve(problem).raise_for_status()
    weighted = set_penalty_weights(solution, config=PenaltyConfig(delta=1e-6))
    value = exact_penalty_objective(problem, solution.z_star, weighted)
    rng = np.random.default_rng(random_qp.seed)
    for step in 0.1 * rng.standard_normal((100, problem.n)):
        moved = exact_penalty_objective(problem, solution.z_star + step, weighted)
        assert value <= moved + 1e-8 * (1 + abs(value))
