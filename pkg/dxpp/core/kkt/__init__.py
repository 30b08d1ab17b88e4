from dxpp.core.kkt.discrepancy import relative_discrepancy
from dxpp.core.kkt.finite_difference import finite_difference_jacobian
from dxpp.core.kkt.reference import (
    KktJacobian,
    kkt_jacobian_full,
    kkt_jacobian_reduced,
    kkt_vjp,
)
