"""
QPs built around a chosen primal-dual point so that the optimum is known exactly and the
active constraints are degenerate on purpose:

- duplicated: an active row appears twice (linearly dependent active rows), its multiplier
  split evenly over the copies
- weakly_active: an extra row holds with equality at the optimum with a zero multiplier
"""
import numpy as np

from dxpp.core.benchgen import BenchInstance, Family, make_rng
from dxpp.core.problem import build_problem
from dxpp.core.solvers.base import QpSolution, SolverStatus, kkt_residuals

DUPLICATED = 'duplicated'
WEAKLY_ACTIVE = 'weakly_active'
DEGENERATE_KINDS = (DUPLICATED, WEAKLY_ACTIVE)

INACTIVE_GAP = 1.0


def gen_degenerate_qp(kind, n, seed):
    """
    :param kind: 'duplicated' or 'weakly_active'
    :param n: number of variables, at least 2
    :param seed: seed of the random data
    :return: BenchInstance whose ground_truth holds z_star, nu_star and mu_star
    """
    if kind not in DEGENERATE_KINDS:
        raise ValueError('unknown degeneracy {!r}, expected one of {}'
                         .format(kind, ', '.join(DEGENERATE_KINDS)))
    if n < 2:
        raise ValueError('need n >= 2, got {}'.format(n))
    rng = make_rng(seed)
    p = active = max(1, n // 4)
    inactive = max(1, n // 2)

    root = rng.standard_normal((n, n))
    P = root @ root.T / n + np.identity(n)
    z = rng.standard_normal(n)
    A = rng.standard_normal((p, n))
    nu = rng.standard_normal(p)
    C_active = rng.standard_normal((active, n))
    mu_active = rng.uniform(0.5, 1.5, active)
    C_inactive = rng.standard_normal((inactive, n))

    if kind == DUPLICATED:
        C_active = np.vstack([C_active, C_active[:1]])
        mu_active[0] *= 0.5
        mu_active = np.concatenate([mu_active, mu_active[:1]])
    else:
        C_active = np.vstack([C_active, rng.standard_normal((1, n))])
        mu_active = np.concatenate([mu_active, [0.0]])

    C = np.vstack([C_active, C_inactive])
    mu = np.concatenate([mu_active, np.zeros(inactive)])
    d = C @ z
    d[C_active.shape[0]:] += INACTIVE_GAP
    q = -(P @ z + A.T @ nu + C.T @ mu)

    return BenchInstance(
        problem=build_problem(P=P, q=q, A=A, b=A @ z, C=C, d=d),
        family=Family.DEGENERATE,
        size_descriptor={'n': n, 'kind': kind},
        seed=seed,
        ground_truth={'z_star': z, 'nu_star': nu, 'mu_star': mu},
    )


def known_solution(instance):
    """:return: QpSolution holding the constructed optimum of the instance"""
    truth = instance.ground_truth
    primal, dual, complementarity = kkt_residuals(
        instance.problem, truth['z_star'], truth['nu_star'], truth['mu_star']
    )
    return QpSolution(
        z_star=np.asarray(truth['z_star'], dtype=float),
        nu_star=np.asarray(truth['nu_star'], dtype=float),
        mu_star=np.asarray(truth['mu_star'], dtype=float),
        status=SolverStatus.OPTIMAL,
        primal_residual=primal,
        dual_residual=dual,
        complementarity_residual=complementarity,
        solver='constructed',
    )
