import numpy as np

from dxpp.core.exceptions import ZeroDenominatorError


def relative_discrepancy(g_a, g_b):
    """
    :return: ||g_a - g_b|| / ||g_b|| in the 2-norm (Frobenius for matrices)
    :raises ZeroDenominatorError: if g_b is zero
    """
    g_a = np.asarray(g_a, dtype=float)
    g_b = np.asarray(g_b, dtype=float)
    if g_a.shape != g_b.shape:
        raise ValueError('shapes differ: {} and {}'.format(g_a.shape, g_b.shape))
    denominator = np.linalg.norm(g_b)
    if denominator == 0:
        raise ZeroDenominatorError('reference gradient is zero')
    return float(np.linalg.norm(g_a - g_b) / denominator)
