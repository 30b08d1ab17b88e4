"""
Euclidean projections onto the probability simplex and onto a chain of points with
bounded differences, as QPs with P = 2I and q = -2x, together with exact oracles.
"""
import numpy as np
import scipy.sparse as sp

from dxpp.core.benchgen import BenchInstance, Family, make_rng
from dxpp.core.problem import build_problem

CHAIN_SCALE = 10.0


def simplex_projection(x):
    """
    Sorted-threshold projection onto {z >= 0, sum(z) = 1}.

    :param x: n-vector
    :return: the projection of x
    """
    x = np.asarray(x, dtype=float).ravel()
    u = np.sort(x)[::-1]
    cssv = np.cumsum(u) - 1.0
    ind = np.arange(1, x.shape[0] + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(x - theta, 0.0)


def simplex_projection_jacobian(x):
    """
    :return: n x n Jacobian diag(s) - s s' / |s| of the projection, s the support indicator
    """
    support = (simplex_projection(x) > 0).astype(float)
    return np.diag(support) - np.outer(support, support) / support.sum()


def simplex_problem(x):
    """
    :param x: point to project
    :return: sparse QpProblem with 0 <= z <= 1 as 2n inequality rows and sum(z) = 1
    """
    x = np.asarray(x, dtype=float).ravel()
    n = x.shape[0]
    identity = sp.identity(n, format='csr')
    return build_problem(
        P=2.0 * identity,
        q=-2.0 * x,
        A=sp.csr_matrix(np.ones((1, n))),
        b=np.ones(1),
        C=sp.vstack([-identity, identity], format='csr'),
        d=np.concatenate([np.zeros(n), np.ones(n)]),
    )


def gen_simplex_projection(n, seed):
    """x ~ N(0, I_n) projected onto the probability simplex."""
    if n < 1:
        raise ValueError('need n >= 1, got {}'.format(n))
    x = make_rng(seed).standard_normal(n)
    return BenchInstance(
        problem=simplex_problem(x),
        family=Family.SIMPLEX,
        size_descriptor={'n': n},
        seed=seed,
        ground_truth={'x': x, 'z_star': simplex_projection(x)},
    )


def _chain_minimizer(y):
    """
    Exact minimizer of sum_j (z_j - y_j)^2 subject to |z_j - z_{j+1}| <= 1.

    Forward pass over the piecewise-linear derivative of the partial cost: knots, derivative
    values at the knots and the outer slopes. Minimizing out z_j shifts the derivative left
    of its root by -1, right of it by +1, and opens a flat zero piece in between.
    """
    points = y.shape[0]
    knots, values = np.array([y[0]]), np.array([0.0])
    left = right = 2.0
    roots = np.empty(points)
    for j in range(points):
        if values[0] >= 0:
            root = knots[0] - values[0] / left
        elif values[-1] <= 0:
            root = knots[-1] - values[-1] / right
        else:
            i = int(np.searchsorted(values, 0.0, side='left'))
            root = knots[i - 1] - values[i - 1] * (knots[i] - knots[i - 1]) \
                / (values[i] - values[i - 1])
        roots[j] = root
        if j == points - 1:
            break
        below, above = knots < root, knots > root
        knots = np.concatenate([knots[below] - 1.0, [root - 1.0, root + 1.0], knots[above] + 1.0])
        values = np.concatenate([values[below], [0.0, 0.0], values[above]])
        values = values + 2.0 * (knots - y[j + 1])
        left += 2.0
        right += 2.0

    z = np.empty(points)
    z[-1] = roots[-1]
    for j in range(points - 2, -1, -1):
        z[j] = np.clip(roots[j], z[j + 1] - 1.0, z[j + 1] + 1.0)
    return z


def chain_projection(x, points, dim):
    """
    Projection of points x_1..x_points in R^dim onto chains with |z_j - z_{j+1}| <= 1
    componentwise. The coordinates decouple, each is solved exactly.

    :param x: flat vector, coordinate k of point j at index j * dim + k
    :return: flat projection in the same layout
    """
    x = np.asarray(x, dtype=float).reshape(points, dim)
    z = np.empty_like(x)
    for k in range(dim):
        z[:, k] = _chain_minimizer(x[:, k])
    return z.ravel()


def chain_problem(x, points, dim):
    """
    :return: sparse QpProblem with the 2 (points - 1) dim difference bounds
        +-(z_j - z_{j+1}) <= 1, two nonzeros per row
    """
    x = np.asarray(x, dtype=float).ravel()
    n = points * dim
    difference = sp.kron(
        sp.diags([1.0, -1.0], [0, 1], shape=(points - 1, points)),
        sp.identity(dim),
        format='csr',
    )
    return build_problem(
        P=2.0 * sp.identity(n, format='csr'),
        q=-2.0 * x,
        C=sp.vstack([difference, -difference], format='csr'),
        d=np.ones(2 * (points - 1) * dim),
    )


def gen_chain_projection(points, dim, seed):
    """Points x_j ~ N(0, 100 I_dim) projected onto the chain set."""
    if points < 2 or dim < 1:
        raise ValueError('need points >= 2 and dim >= 1, got points={}, dim={}'
                         .format(points, dim))
    x = CHAIN_SCALE * make_rng(seed).standard_normal(points * dim)
    return BenchInstance(
        problem=chain_problem(x, points, dim),
        family=Family.CHAIN,
        size_descriptor={'points': points, 'dim': dim},
        seed=seed,
        ground_truth={'x': x, 'z_star': chain_projection(x, points, dim)},
    )
