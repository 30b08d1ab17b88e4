import numpy as np
import pytest
import scipy.sparse as sp

from dxpp.core.linalg import SolveMode, indefinite_solve


@pytest.mark.parametrize('to_matrix', [np.asarray, sp.csc_matrix])
def test_nonsingular(to_matrix):
    K = np.array([[2.0, 1.0], [1.0, -1.0]])
    X, residual, mode = indefinite_solve(to_matrix(K), np.array([3.0, 0.0]))
    assert mode == SolveMode.DIRECT
    np.testing.assert_allclose(X, [1.0, 1.0])
    assert residual < 1e-12


@pytest.mark.parametrize('to_matrix', [np.asarray, sp.csc_matrix])
def test_singular(to_matrix):
    K = np.array([[1.0, 1.0], [1.0, 1.0]])
    X, residual, mode = indefinite_solve(to_matrix(K), np.array([[2.0], [2.0]]))
    assert mode == SolveMode.LEAST_SQUARES_DAMPED
    # the least-squares solutions of K x = rhs all have x_1 + x_2 = 2
    assert X.sum() == pytest.approx(2.0)
    assert residual < 1e-6


def test_inconsistent_singular_system():
    K = np.array([[1.0, 0.0], [0.0, 0.0]])
    X, residual, mode = indefinite_solve(K, np.array([1.0, 1.0]))
    assert mode == SolveMode.LEAST_SQUARES_DAMPED
    np.testing.assert_allclose(X, [1.0, 0.0], atol=1e-8)
    assert residual == pytest.approx(1.0 / np.sqrt(2.0))


def test_empty_system():
    X, residual, mode = indefinite_solve(np.zeros((0, 0)), np.zeros((0, 3)))
    assert X.shape == (0, 3)
    assert residual == 0.0
    assert mode == SolveMode.DIRECT
