"""
Solution sensitivities from the penalty Hessian: full Jacobians, vector-Jacobian products
and Jacobian-vector products, each with one factorization of H.
"""
import dataclasses
from enum import Enum
from typing import Optional

import numpy as np

from dxpp.core.active_set import classify_active_set, set_penalty_weights
from dxpp.core.penalty.hessian import assemble_hessian
from dxpp.core.penalty.rhs import DIRECTION, RhsAssembly, assemble_rhs
from dxpp.core.penalty.softplus import softplus_first, softplus_second
from dxpp.core.problem import DataGradient, normalize_blocks


class SensitivityMode(Enum):
    FULL_JACOBIAN = 'full_jacobian'
    VJP = 'vjp'
    JVP = 'jvp'


@dataclasses.dataclass(frozen=True, eq=False)
class SensitivityResult:
    mode: SensitivityMode
    jacobian_blocks: Optional[dict] = None
    vjp_gradient: Optional[DataGradient] = None
    jvp_direction_result: Optional[np.ndarray] = None
    u: Optional[np.ndarray] = None
    margin_warning: bool = False

    def __post_init__(self):
        payloads = {
            SensitivityMode.FULL_JACOBIAN: self.jacobian_blocks,
            SensitivityMode.VJP: self.vjp_gradient,
            SensitivityMode.JVP: self.jvp_direction_result,
        }
        if sum(value is not None for value in payloads.values()) != 1 \
                or payloads[self.mode] is None:
            raise ValueError('a {} result carries exactly its own payload'.format(self.mode.value))

    def jacobian(self, blocks=None):
        """:return: the Jacobian blocks side by side, in canonical block order"""
        names = [name for name in normalize_blocks(blocks) if name in self.jacobian_blocks]
        return np.hstack([self.jacobian_blocks[name] for name in names])


def solve_jacobian(hessian, rhs):
    """
    :param hessian: PenaltyHessian
    :param rhs: RhsAssembly, or an iterable of them for several blocks
    :return: SensitivityResult (full_jacobian) with Z = H^-1 R per block
    """
    if isinstance(rhs, RhsAssembly):
        rhs = [rhs]
    blocks = {}
    for assembly in rhs:
        blocks[assembly.block] = np.asarray(hessian.solve(assembly.total)).reshape(
            hessian.problem.n, assembly.columns
        )
    return SensitivityResult(
        mode=SensitivityMode.FULL_JACOBIAN,
        jacobian_blocks=blocks,
        margin_warning=hessian.margin_warning,
    )


def dual_sensitivity(hessian, rhs, jacobian):
    """
    Estimate of the derivative of y* = (nu*, mu*_A): (1/delta) W (B Z + g_theta).

    :param hessian: PenaltyHessian
    :param rhs: RhsAssembly of the block
    :param jacobian: Z of the block, or the SensitivityResult holding it
    :return: (p + |A|) x s matrix
    """
    if isinstance(jacobian, SensitivityResult):
        jacobian = jacobian.jacobian_blocks[rhs.block]
    BZ = np.asarray(hessian.B @ jacobian).reshape(rhs.g_theta.shape)
    return hessian.W[:, None] * (BZ + rhs.g_theta) / hessian.delta


def vjp(hessian, problem, solution, active_set, config, r, blocks=None):
    """
    Gradient of r'z* with respect to the QP data, from one solve H u = r.

    :param r: n-vector, the gradient of the loss with respect to z*
    :param blocks: data blocks to compute, all by default; the others stay None
    :return: SensitivityResult (vjp) with a DataGradient and the adjoint u
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.shape[0] != problem.n:
        raise ValueError('r has length {}, expected {}'.format(r.shape[0], problem.n))
    if not np.all(np.isfinite(r)):
        raise ValueError('r has non-finite entries')
    blocks = normalize_blocks(blocks)
    u = np.asarray(hessian.solve(r)).ravel()
    z, nu, mu = solution.z_star, solution.nu_star, solution.mu_star
    active, inactive = active_set.active_rows, active_set.inactive_rows
    delta = config.delta
    equality_weight = config.rho / (2.0 * delta)
    active_weight = config.alpha / (4.0 * delta)
    unpruned = not config.prune_inactive and inactive.size > 0

    Au = np.asarray(problem.A @ u).ravel() if problem.p else np.zeros(0)
    Cu = np.asarray(problem.C @ u).ravel() if problem.m else np.zeros(0)
    first = second = None
    if unpruned:
        slack = active_set.slack[inactive]
        first = config.alpha * softplus_first(slack, delta)
        second = config.alpha * softplus_second(slack, delta)

    gradient = DataGradient()
    if 'q' in blocks:
        gradient.dq = -u
    if 'b' in blocks:
        gradient.db = equality_weight * Au
    if 'd' in blocks:
        dd = np.zeros(problem.m)
        dd[active] = active_weight * Cu[active]
        if unpruned:
            dd[inactive] = second * Cu[inactive]
        gradient.dd = dd
    if 'A' in blocks:
        gradient.dA = -(np.outer(nu, u) + equality_weight * np.outer(Au, z))
    if 'C' in blocks:
        dC = np.zeros((problem.m, problem.n))
        dC[active] = -(np.outer(mu[active], u) + active_weight * np.outer(Cu[active], z))
        if unpruned:
            dC[inactive] = -(np.outer(first, u) + np.outer(second * Cu[inactive], z))
        gradient.dC = dC
    if 'P' in blocks:
        gradient.dP = -0.5 * (np.outer(u, z) + np.outer(z, u))
    return SensitivityResult(
        mode=SensitivityMode.VJP,
        vjp_gradient=gradient,
        u=u,
        margin_warning=hessian.margin_warning,
    )


def jvp(hessian, problem, solution, active_set, config, direction):
    """
    Directional derivative of z* along a change of the QP data.

    :param direction: DataGradient, None blocks count as zero
    :return: SensitivityResult (jvp) with the n-vector dz*
    """
    rhs = assemble_rhs(problem, solution, active_set, config, DIRECTION, direction=direction)
    result = np.asarray(hessian.solve(rhs.total[:, 0])).ravel()
    return SensitivityResult(
        mode=SensitivityMode.JVP,
        jvp_direction_result=result,
        margin_warning=hessian.margin_warning,
    )


def sensitivity_jacobian(problem, solution, config=None, blocks=None, eps_active=None,
                         options=None):
    """
    End-to-end backward pass for a solved QP: classify the active set, set the penalty
    weights, assemble and factorize H, and solve for the Jacobian of every requested block.

    :param problem: QpProblem
    :param solution: optimal QpSolution
    :param config: PenaltyConfig; weights are set from the solution when missing
    :param blocks: data blocks, all by default
    :return: SensitivityResult (full_jacobian)
    """
    solution.raise_for_status()
    active_set = classify_active_set(problem, solution, eps_active)
    if config is None or not config.has_weights:
        config = set_penalty_weights(solution, config=config)
    hessian = assemble_hessian(problem, solution, active_set, config, options=options)
    rhs = [
        assemble_rhs(problem, solution, active_set, config, block)
        for block in normalize_blocks(blocks)
    ]
    return solve_jacobian(hessian, rhs)
