import dataclasses
from typing import Optional

import numpy as np

from dxpp.core.logger import log


@dataclasses.dataclass(frozen=True, eq=False)
class ActiveSet:
    """
    Partition of the inequality rows at z*. Row i is active when its slack
    s_i = (Cz* - d)_i is at least -threshold; the margin is the smallest -s_i over the
    inactive rows, or +inf when there are none.
    """

    active_rows: np.ndarray
    inactive_rows: np.ndarray
    slack: np.ndarray
    margin: float
    threshold: float

    @property
    def size(self):
        return self.active_rows.shape[0]


@dataclasses.dataclass(frozen=True)
class PenaltyConfig:
    delta: float = 1e-6
    zeta: float = 10.0
    rho: Optional[float] = None
    alpha: Optional[float] = None
    prune_inactive: bool = True
    rho_floor: float = 1.0
    alpha_floor: float = 1.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError('delta must be positive, got {}'.format(self.delta))
        if not self.zeta >= 1:
            raise ValueError('zeta must be at least 1, got {}'.format(self.zeta))

    @property
    def has_weights(self):
        return self.rho is not None and self.alpha is not None

    def margin_threshold(self):
        """Margins below 10 delta log(1/delta) leave the inactive terms non-negligible."""
        return 10.0 * self.delta * np.log(1.0 / self.delta) if self.delta < 1 else np.inf


def classify_active_set(problem, solution, eps_active=None):
    """
    :param problem: QpProblem
    :param solution: optimal QpSolution
    :param eps_active: activity threshold, config.eps_active by default
    :return: ActiveSet; a slack of exactly -eps_active counts as active
    """
    if eps_active is None:
        from dxpp import config

        eps_active = config.eps_active
    if problem.m == 0:
        empty = np.zeros(0, dtype=np.int64)
        return ActiveSet(empty, empty, np.zeros(0), np.inf, eps_active)

    slack = np.asarray(problem.C @ solution.z_star).ravel() - problem.d
    active = slack >= -eps_active
    active_rows = np.flatnonzero(active)
    inactive_rows = np.flatnonzero(~active)
    margin = float(np.min(-slack[inactive_rows])) if inactive_rows.size else np.inf

    violation = float(slack.max())
    if violation > eps_active:
        log('inequality {} is violated by {:.3e} at z*'.format(int(slack.argmax()), violation))
    return ActiveSet(
        active_rows=active_rows,
        inactive_rows=inactive_rows,
        slack=slack,
        margin=margin,
        threshold=eps_active,
    )


def set_penalty_weights(solution, zeta=None, config=None):
    """
    rho = max(zeta ||nu*||_inf, rho_floor) and alpha = max(zeta ||mu*||_inf, alpha_floor),
    large enough for the exact penalty to share its minimizer with the QP.

    :param solution: optimal QpSolution
    :param zeta: penalty scale, config.zeta by default
    :param config: PenaltyConfig holding delta, floors and the pruning flag
    :return: PenaltyConfig with rho and alpha set
    """
    if config is None:
        from dxpp import config as dxpp_config

        config = dxpp_config.penalty_config()
    if zeta is None:
        zeta = config.zeta
    nu_norm = float(np.max(np.abs(solution.nu_star))) if solution.nu_star.size else 0.0
    mu_norm = float(np.max(np.abs(solution.mu_star))) if solution.mu_star.size else 0.0
    return dataclasses.replace(
        config,
        zeta=zeta,
        rho=max(zeta * nu_norm, config.rho_floor),
        alpha=max(zeta * mu_norm, config.alpha_floor),
    )
