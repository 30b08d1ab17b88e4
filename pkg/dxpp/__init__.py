"""Differentiable quadratic programming.

Solve a strictly convex QP with any registered forward solver and differentiate
its solution through the smoothed exact-penalty system:

>>> import dxpp
>>> problem = dxpp.build_problem(P, q, A, b, C, d)
>>> solution = dxpp.solve(problem)
>>> result = dxpp.sensitivity_jacobian(problem, solution, blocks=('q',))
>>> result.jacobian_blocks['q']

The settings come from the module-level `config`, which can be initialized from
a config file with `dxpp.config.init_from(file='config.cfg')`.
"""

import os

from dxpp.core.config import Config
from dxpp.core.logger import log


def loc():
    """Get the current location of the project."""
    return os.path.abspath(os.path.dirname(__file__)) + "/"


config = Config()

from dxpp.core.problem import (  # noqa: E402
    DataGradient,
    QpProblem,
    StorageMode,
    build_problem,
    check_positive_definite,
)
from dxpp.core.solvers import available_solvers, register_solver, solve  # noqa: E402
from dxpp.core.active_set import (  # noqa: E402
    ActiveSet,
    PenaltyConfig,
    classify_active_set,
    set_penalty_weights,
)
from dxpp.core.penalty import (  # noqa: E402
    SensitivityResult,
    assemble_hessian,
    assemble_rhs,
    dual_sensitivity,
    jvp,
    sensitivity_jacobian,
    solve_jacobian,
    vjp,
)
from dxpp.core.kkt import (  # noqa: E402
    finite_difference_jacobian,
    kkt_jacobian_full,
    kkt_jacobian_reduced,
    relative_discrepancy,
)
