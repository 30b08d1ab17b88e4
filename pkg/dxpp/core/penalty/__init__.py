from dxpp.core.penalty.hessian import PenaltyHessian, assemble_hessian
from dxpp.core.penalty.objective import exact_penalty_objective, smoothed_penalty_objective
from dxpp.core.penalty.rhs import RhsAssembly, assemble_rhs
from dxpp.core.penalty.sensitivity import (
    SensitivityMode,
    SensitivityResult,
    dual_sensitivity,
    jvp,
    sensitivity_jacobian,
    solve_jacobian,
    vjp,
)
from dxpp.core.penalty.softplus import SoftplusEval, softplus_eval
