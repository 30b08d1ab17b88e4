import numpy as np
import scipy.sparse as sp

from dxpp.core.linalg import PenaltyOperator, gram_diagonal, gram_nnz_bound, weighted_gram

B = np.array([[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]])
W = np.array([0.5, 2.0])


def test_weighted_gram():
    expected = B.T @ np.diag(W) @ B
    np.testing.assert_allclose(weighted_gram(B, W), expected)
    gram = weighted_gram(sp.csr_matrix(B), W)
    assert sp.issparse(gram)
    np.testing.assert_allclose(gram.toarray(), expected)
    assert (gram != gram.T).nnz == 0


def test_weighted_gram_without_rows():
    assert weighted_gram(np.zeros((0, 3)), []).shape == (3, 3)
    assert weighted_gram(sp.csr_matrix((0, 3)), []).nnz == 0


def test_gram_helpers():
    assert gram_nnz_bound(B) == 5
    assert gram_nnz_bound(sp.csr_matrix(B)) == 5
    np.testing.assert_allclose(gram_diagonal(B, W), np.diag(B.T @ np.diag(W) @ B))
    np.testing.assert_allclose(gram_diagonal(sp.csr_matrix(B), W), gram_diagonal(B, W))


def test_penalty_operator():
    P = np.identity(3)
    operator = PenaltyOperator(P, sp.csr_matrix(B), W, scale=10.0)
    dense = P + 10.0 * B.T @ np.diag(W) @ B
    x = np.array([1.0, -1.0, 2.0])
    np.testing.assert_allclose(operator.matvec(x), dense @ x)
    np.testing.assert_allclose(operator.diagonal(), np.diag(dense))
