"""
Products used to assemble the penalty Hessian and the interior-point systems.
"""
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator


def weighted_gram(B, w):
    """
    B' diag(w) B, in the storage of B and symmetric entry by entry.

    :param B: k x n dense array or scipy.sparse matrix
    :param w: k positive weights
    :return: n x n dense array, or CSR matrix when B is sparse
    """
    w = np.asarray(w, dtype=float)
    n = B.shape[1]
    if sp.issparse(B):
        B = sp.csr_matrix(B)
        if B.shape[0] == 0:
            return sp.csr_matrix((n, n))
        gram = sp.csr_matrix(B.T @ sp.diags(w) @ B)
        # products of sparse matrices are only symmetric up to rounding
        upper = sp.triu(gram, format='csr')
        return sp.csr_matrix(upper + sp.triu(upper, k=1, format='csr').T)
    B = np.asarray(B, dtype=float)
    if B.shape[0] == 0:
        return np.zeros((n, n))
    scaled = B * np.sqrt(w)[:, None]
    gram = scaled.T @ scaled
    return np.triu(gram) + np.triu(gram, k=1).T


def gram_nnz_bound(B):
    """:return: upper bound on the nonzeros of B' D B, the sum of squared row counts"""
    if sp.issparse(B):
        counts = np.diff(sp.csr_matrix(B).indptr)
    else:
        counts = np.count_nonzero(B, axis=1)
    return int(np.sum(np.asarray(counts, dtype=np.int64) ** 2))


def gram_diagonal(B, w):
    """:return: diagonal of B' diag(w) B without forming it"""
    if sp.issparse(B):
        return np.asarray(B.multiply(B).T @ w).ravel()
    B = np.asarray(B, dtype=float)
    return (B * B).T @ w


class PenaltyOperator(LinearOperator):
    """
    Matrix-free x -> P x + scale * B' (w * (B x)), used when B' W B would be too dense to form.
    """

    def __init__(self, P, B, w, scale=1.0):
        self.P = P
        self.B = B
        self.w = np.asarray(w, dtype=float) * scale
        super().__init__(dtype=np.dtype(float), shape=P.shape)

    def _matvec(self, x):
        x = np.ravel(x)
        return np.asarray(self.P @ x).ravel() + np.asarray(self.B.T @ (self.w * (self.B @ x))).ravel()

    def _rmatvec(self, x):
        return self._matvec(x)

    def diagonal(self):
        return np.asarray(self.P.diagonal(), dtype=float) + gram_diagonal(self.B, self.w)
