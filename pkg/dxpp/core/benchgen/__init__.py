"""
Seeded generators of the benchmark problem families. The same (family, size, seed)
always gives the same instance.
"""
import dataclasses
from enum import Enum
from typing import Optional

import numpy as np


class Family(Enum):
    RANDOM_QP = 'random_qp'
    SIMPLEX = 'simplex'
    CHAIN = 'chain'
    PORTFOLIO = 'portfolio'
    DEGENERATE = 'degenerate'


@dataclasses.dataclass(frozen=True, eq=False)
class BenchInstance:
    problem: object
    family: Family
    size_descriptor: dict
    seed: int
    ground_truth: Optional[dict] = None
    notes: tuple = ()

    def metadata(self):
        """:return: the entries of the problem file sidecar"""
        extra = {}
        if self.ground_truth is not None:
            extra['ground_truth'] = {
                key: np.asarray(value).tolist() for key, value in self.ground_truth.items()
            }
        return dict(
            family=self.family.value,
            size=dict(self.size_descriptor),
            seed=self.seed,
            notes=list(self.notes),
            **extra
        )


def make_rng(seed):
    """
    :return: numpy Generator on the 64-bit PCG64 bit generator; normals come from its
        ziggurat standard_normal
    """
    return np.random.Generator(np.random.PCG64(seed))


def instance_count(n):
    """Default number of seeded instances per size: 50 up to n = 4600, 25 above."""
    return 50 if n <= 4600 else 25


from dxpp.core.benchgen.random_qp import gen_random_qp  # noqa: E402
from dxpp.core.benchgen.projections import (  # noqa: E402
    chain_problem,
    chain_projection,
    gen_chain_projection,
    gen_simplex_projection,
    simplex_problem,
    simplex_projection,
    simplex_projection_jacobian,
)
from dxpp.core.benchgen.portfolio import (  # noqa: E402
    gen_portfolio_qp,
    portfolio_decision_loss,
    portfolio_problem,
    synthetic_market,
)
from dxpp.core.benchgen.degenerate import (  # noqa: E402
    DEGENERATE_KINDS,
    gen_degenerate_qp,
    known_solution,
)


def generate(family, seed, **size):
    """
    :param family: Family or its value
    :param seed: instance seed
    :param size: the size parameters of the family's generator
    :return: BenchInstance
    """
    generators = {
        Family.RANDOM_QP: gen_random_qp,
        Family.SIMPLEX: gen_simplex_projection,
        Family.CHAIN: gen_chain_projection,
        Family.PORTFOLIO: gen_portfolio_qp,
        Family.DEGENERATE: gen_degenerate_qp,
    }
    return generators[Family(family)](seed=seed, **size)
