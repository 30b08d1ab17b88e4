import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dxpp.core.benchgen import (
    chain_projection,
    gen_chain_projection,
    simplex_projection,
    simplex_projection_jacobian,
)
from dxpp.core.solvers import solve

vectors = st.lists(st.floats(min_value=-10.0, max_value=10.0), min_size=1, max_size=8)


def test_simplex_projection_example():
    np.testing.assert_allclose(simplex_projection([0.6, 0.2]), [0.7, 0.3])
    np.testing.assert_allclose(simplex_projection([3.0, 0.0]), [1.0, 0.0])
    np.testing.assert_allclose(simplex_projection_jacobian([0.6, 0.2]),
                               [[0.5, -0.5], [-0.5, 0.5]])


@given(x=vectors)
def test_simplex_projection_is_optimal(x):
    x = np.asarray(x)
    z = simplex_projection(x)
    assert np.all(z >= 0)
    assert z.sum() == pytest.approx(1.0)
    # x - z makes an obtuse angle with every direction into the simplex
    gap = x - z
    assert np.all(gap <= gap @ z + 1e-9)


@pytest.mark.parametrize('simplex__n', [2, 5, 30])
@pytest.mark.parametrize('simplex__seed', [0, 1])
def test_simplex_instance(simplex):
    problem = simplex.problem
    n = simplex.problem.n
    assert problem.is_sparse
    assert (problem.p, problem.m) == (1, 2 * n)
    np.testing.assert_allclose(problem.q, -2.0 * simplex.ground_truth['x'])
    solution = solve(problem)
    assert solution.is_optimal
    np.testing.assert_allclose(solution.z_star, simplex.ground_truth['z_star'], atol=1e-5)


def test_chain_projection_example():
    np.testing.assert_allclose(chain_projection([0.0, 10.0], 2, 1), [4.5, 5.5])
    np.testing.assert_allclose(chain_projection([0.0, 0.5, 3.0], 3, 1), [1 / 6, 7 / 6, 13 / 6])


@given(x=vectors)
def test_chain_projection_is_feasible(x):
    z = chain_projection(x + [0.0], len(x) + 1, 1)
    assert np.all(np.abs(np.diff(z)) <= 1.0 + 1e-9)
    # the minimizer is at least as close as the feasible constant point at the mean
    y = np.asarray(x + [0.0])
    spread = np.sum((y - y.mean()) ** 2)
    assert np.sum((z - y) ** 2) <= spread + 1e-9 * (1.0 + spread)


@pytest.mark.parametrize('chain__points,chain__dim', [(5, 2), (12, 1), (3, 3)])
def test_chain_instance(chain):
    problem = chain.problem
    points, dim = chain.size_descriptor['points'], chain.size_descriptor['dim']
    assert problem.n == points * dim
    assert (problem.p, problem.m) == (0, 2 * (points - 1) * dim)
    solution = solve(problem)
    assert solution.is_optimal
    np.testing.assert_allclose(solution.z_star,
                               chain_projection(chain.ground_truth['x'], points, dim), atol=1e-5)


def test_invalid_chain():
    with pytest.raises(ValueError):
        gen_chain_projection(1, 2, 0)
    with pytest.raises(ValueError):
        gen_chain_projection(3, 0, 0)
