import numpy as np
import pytest

from dxpp.core.active_set import classify_active_set, set_penalty_weights
from dxpp.core.benchgen import DEGENERATE_KINDS, known_solution
from dxpp.core.kkt import kkt_jacobian_full
from dxpp.core.penalty import assemble_hessian, assemble_rhs, solve_jacobian, vjp


@pytest.mark.parametrize('degenerate__kind', DEGENERATE_KINDS)
@pytest.mark.parametrize('degenerate__seed', range(25))
def test_penalty_hessian_survives_degeneracy(config, degenerate):
    problem = degenerate.problem
    solution = known_solution(degenerate)
    active_set = classify_active_set(problem, solution)
    penalty = set_penalty_weights(solution, config=config.penalty_config())

    hessian = assemble_hessian(problem, solution, active_set, penalty)
    assert hessian.min_pivot > 0
    jacobian = solve_jacobian(hessian, assemble_rhs(problem, solution, active_set, penalty, 'q'))
    assert np.all(np.isfinite(jacobian.jacobian_blocks['q']))
    r = np.random.default_rng(degenerate.seed).standard_normal(problem.n)
    gradient = vjp(hessian, problem, solution, active_set, penalty, r).vjp_gradient
    assert all(np.all(np.isfinite(value)) for value in gradient.as_dict().values())

    assert kkt_jacobian_full(problem, solution, 'q').is_singular
