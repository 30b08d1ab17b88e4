from dxpp.core.linalg.cg import JacobiCg
from dxpp.core.linalg.factor import (
    low_rank_update,
    FactorKind,
    FactorOptions,
    SpdFactor,
    select_strategy,
    spd_factorize,
    spd_solve,
)
from dxpp.core.linalg.indefinite import SolveMode, indefinite_solve
from dxpp.core.linalg.products import (
    PenaltyOperator,
    gram_diagonal,
    gram_nnz_bound,
    weighted_gram,
)
