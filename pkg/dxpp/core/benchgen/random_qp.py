import numpy as np

from dxpp.core.benchgen import BenchInstance, Family, make_rng
from dxpp.core.problem import build_problem

RIDGE = 1e-6


def gen_random_qp(n, m, seed):
    """
    Dense strictly convex QP with m equalities and m inequalities, feasible at z0 = 1.
    Draws P', q, A, C in that order from standard normals; P = P'P'^T + 1e-6 I,
    b = A 1, d = C 1 + 1.

    :return: BenchInstance
    """
    if n < 1 or m < 0:
        raise ValueError('need n >= 1 and m >= 0, got n={}, m={}'.format(n, m))
    rng = make_rng(seed)
    root = rng.standard_normal((n, n))
    q = rng.standard_normal(n)
    A = rng.standard_normal((m, n))
    C = rng.standard_normal((m, n))
    anchor = np.ones(n)
    problem = build_problem(
        P=root @ root.T + RIDGE * np.identity(n),
        q=q,
        A=A,
        b=A @ anchor,
        C=C,
        d=C @ anchor + 1.0,
    )
    return BenchInstance(
        problem=problem,
        family=Family.RANDOM_QP,
        size_descriptor={'n': n, 'm': m},
        seed=seed,
    )
