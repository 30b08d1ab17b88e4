import numpy as np
import pytest

from dxpp.core.active_set import classify_active_set
from dxpp.core.benchgen import known_solution
from dxpp.core.kkt import kkt_jacobian_full, kkt_jacobian_reduced, kkt_vjp
from dxpp.core.linalg import SolveMode
from dxpp.core.solvers import solve
from tests.fixtures.problems import HAND_DMU_DQ, HAND_DNU_DQ, HAND_DZ_DD, HAND_DZ_DQ


def test_reduced_on_hand_problem(hand_problem, sparse_hand_problem, hand_solution):
    for problem in (hand_problem, sparse_hand_problem):
        active_set = classify_active_set(problem, hand_solution)
        result = kkt_jacobian_reduced(problem, hand_solution, active_set, 'q')
        assert result.solve_mode == SolveMode.DIRECT
        assert not result.is_singular
        assert result.residual < 1e-12
        np.testing.assert_allclose(result.dz, HAND_DZ_DQ, atol=1e-12)
        np.testing.assert_allclose(result.dnu, HAND_DNU_DQ, atol=1e-12)
        np.testing.assert_allclose(result.dmu_active, HAND_DMU_DQ, atol=1e-12)
        np.testing.assert_allclose(result.dmu(problem.m), np.vstack([HAND_DMU_DQ, np.zeros(3)]),
                                   atol=1e-12)


def test_full_on_hand_problem(hand_problem, hand_solution):
    for block, expected in (('q', HAND_DZ_DQ), ('d', HAND_DZ_DD)):
        result = kkt_jacobian_full(hand_problem, hand_solution, block)
        assert result.solve_mode == SolveMode.DIRECT
        np.testing.assert_allclose(result.dz, expected, atol=1e-10)
        # the inactive multiplier does not move
        np.testing.assert_allclose(result.dmu_active[1], 0.0, atol=1e-10)


@pytest.mark.parametrize('random_qp__seed', [0, 1])
def test_full_agrees_with_reduced(random_qp):
    problem = random_qp.problem
    solution = solve(problem).raise_for_status()
    active_set = classify_active_set(problem, solution)
    reduced = kkt_jacobian_reduced(problem, solution, active_set, 'q')
    full = kkt_jacobian_full(problem, solution, 'q')
    np.testing.assert_allclose(full.dz, reduced.dz, atol=1e-4)


@pytest.mark.parametrize('degenerate__kind', ['duplicated'])
def test_duplicated_rows(degenerate):
    problem, solution = degenerate.problem, known_solution(degenerate)
    active_set = classify_active_set(problem, solution)
    reduced = kkt_jacobian_reduced(problem, solution, active_set, 'q')
    assert reduced.is_singular
    assert np.all(np.isfinite(reduced.dz))
    full = kkt_jacobian_full(problem, solution, 'q')
    assert full.solve_mode == SolveMode.LEAST_SQUARES_DAMPED


@pytest.mark.parametrize('degenerate__kind', ['weakly_active'])
def test_weakly_active_row(degenerate):
    problem, solution = degenerate.problem, known_solution(degenerate)
    active_set = classify_active_set(problem, solution)
    reduced = kkt_jacobian_reduced(problem, solution, active_set, 'q')
    assert reduced.solve_mode == SolveMode.DIRECT
    full = kkt_jacobian_full(problem, solution, 'q')
    assert full.solve_mode == SolveMode.LEAST_SQUARES_DAMPED


@pytest.mark.parametrize('random_qp__seed', [0, 1])
def test_vjp_is_transposed_jacobian(random_qp):
    problem = random_qp.problem
    solution = solve(problem).raise_for_status()
    active_set = classify_active_set(problem, solution)
    r = np.random.default_rng(2).standard_normal(problem.n)
    gradient, mode = kkt_vjp(problem, solution, active_set, r, blocks='all')
    assert mode == SolveMode.DIRECT
    for block in ('P', 'q', 'A', 'b', 'C', 'd'):
        jacobian = kkt_jacobian_reduced(problem, solution, active_set, block).dz
        expected = (r @ jacobian).reshape(gradient.get(block).shape)
        np.testing.assert_allclose(gradient.get(block), expected, rtol=1e-7, atol=1e-9)
