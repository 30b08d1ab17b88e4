"""
Multi-period mean-variance portfolio with an l1 turnover budget, in standard QP form over
the augmented variable (w, u): per period k, w_k are the weights and u_k bounds |w_k - w_{k-1}|.
"""
import numpy as np

from dxpp.core.benchgen import BenchInstance, Family, make_rng
from dxpp.core.problem import build_problem

FACTORS = 3
IDIOSYNCRATIC_RIDGE = 1e-6
FACTOR_SCALE = 0.01
RETURN_MEAN = 0.0005
RETURN_SCALE = 0.01
TURNOVER_RIDGE = 1e-8


def synthetic_market(horizon, assets, rng):
    """
    Per-period covariances L L' + 1e-6 I from a 3-factor model with L ~ 0.01 N(0, 1), then
    return forecasts ~ N(0.0005, 0.01^2). The factor loadings of every period are drawn
    before the forecasts.

    :return: (forecasts H x N, covariances H x N x N)
    """
    loadings = FACTOR_SCALE * rng.standard_normal((horizon, assets, FACTORS))
    covariances = loadings @ loadings.transpose(0, 2, 1) + IDIOSYNCRATIC_RIDGE * np.identity(assets)
    forecasts = RETURN_MEAN + RETURN_SCALE * rng.standard_normal((horizon, assets))
    return forecasts, covariances


def portfolio_problem(forecasts, covariances, risk_aversion, turnover, previous=None):
    """
    :param forecasts: H x N expected returns
    :param covariances: H x N x N covariance estimates
    :param previous: pre-trade weights, equal weights by default
    :return: dense QpProblem over 2NH variables with H budget equalities and 4NH + H
        inequalities: w >= 0, u >= 0, the two sides of the turnover linearization and
        1'u_k <= turnover
    """
    horizon, assets = forecasts.shape
    block = horizon * assets
    if previous is None:
        previous = np.full(assets, 1.0 / assets)

    P = np.zeros((2 * block, 2 * block))
    for k in range(horizon):
        span = slice(k * assets, (k + 1) * assets)
        P[span, span] = risk_aversion * covariances[k]
    # the u block has no curvature of its own
    P[block:, block:] = TURNOVER_RIDGE * np.identity(block)
    q = np.concatenate([-forecasts.ravel(), np.zeros(block)])

    A = np.hstack([np.kron(np.identity(horizon), np.ones((1, assets))), np.zeros((horizon, block))])
    b = np.ones(horizon)

    identity = np.identity(block)
    zeros = np.zeros((block, block))
    # w_k - w_{k-1}, the pre-trade weights enter the right-hand side of period 1
    change = identity - np.kron(np.eye(horizon, k=-1), np.identity(assets))
    carried = np.zeros(block)
    carried[:assets] = previous
    budget = np.hstack([np.zeros((horizon, block)),
                        np.kron(np.identity(horizon), np.ones((1, assets)))])
    C = np.vstack([
        np.hstack([-identity, zeros]),
        np.hstack([zeros, -identity]),
        np.hstack([change, -identity]),
        np.hstack([-change, -identity]),
        budget,
    ])
    d = np.concatenate([
        np.zeros(block),
        np.zeros(block),
        carried,
        -carried,
        np.full(horizon, turnover),
    ])
    return build_problem(P=P, q=q, A=A, b=b, C=C, d=d)


def gen_portfolio_qp(horizon, assets, risk_aversion, turnover, seed):
    """
    :param horizon: number of periods H
    :param assets: number of assets N
    :param risk_aversion: lambda > 0
    :param turnover: total l1 turnover budget per period, tau > 0
    :param seed: seed of the synthetic market data
    :return: BenchInstance
    """
    if horizon < 1 or assets < 2:
        raise ValueError('need horizon >= 1 and assets >= 2, got horizon={}, assets={}'
                         .format(horizon, assets))
    if not risk_aversion > 0 or not turnover > 0:
        raise ValueError('risk_aversion and turnover must be positive')
    forecasts, covariances = synthetic_market(horizon, assets, make_rng(seed))
    return BenchInstance(
        problem=portfolio_problem(forecasts, covariances, risk_aversion, turnover),
        family=Family.PORTFOLIO,
        size_descriptor={
            'horizon': horizon,
            'assets': assets,
            'risk_aversion': risk_aversion,
            'turnover': turnover,
        },
        seed=seed,
        notes=('ridge {:g} I added to the turnover block of P to make it positive definite'
               .format(TURNOVER_RIDGE),),
    )


def portfolio_decision_loss(instance, z, realized_returns, realized_covariances):
    """
    Decision loss sum_k (-r_k'w_k + lambda/2 w_k' Sigma_k w_k) of the weights in z, evaluated
    on the realized market.

    :param instance: portfolio BenchInstance
    :param z: augmented solution (w, u)
    :param realized_returns: H x N
    :param realized_covariances: H x N x N
    :return: (loss, gradient with respect to z), zero on the u part
    """
    horizon = instance.size_descriptor['horizon']
    assets = instance.size_descriptor['assets']
    risk_aversion = instance.size_descriptor['risk_aversion']
    z = np.asarray(z, dtype=float).ravel()
    weights = z[:horizon * assets].reshape(horizon, assets)
    risk = np.einsum('kij,kj->ki', realized_covariances, weights)

    loss = float(-np.sum(realized_returns * weights)
                 + 0.5 * risk_aversion * np.sum(weights * risk))
    gradient = np.zeros_like(z)
    gradient[:horizon * assets] = (-realized_returns + risk_aversion * risk).ravel()
    return loss, gradient
