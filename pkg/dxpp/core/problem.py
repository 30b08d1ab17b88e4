"""
Data model of the parameterized quadratic program

    minimize    1/2 z'Pz + q'z
    subject to  Az = b,  Cz <= d

and of the gradients with respect to its data.
"""
import dataclasses
from enum import Enum
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.linalg import lapack
from scipy.sparse.linalg import norm as sparse_norm

from dxpp.core.exceptions import (
    AsymmetricMatrixError,
    DimensionMismatchError,
    NonFiniteDataError,
    UnknownParameterBlockError,
)
from dxpp.core.logger import log

PARAMETER_BLOCKS = ('P', 'q', 'A', 'b', 'C', 'd')

SYMMETRY_TOLERANCE = 1e-12
SYMMETRY_REPAIR_TOLERANCE = 1e-6
PIVOT_TOLERANCE = 1e-12


class StorageMode(Enum):
    DENSE = 'dense'
    SPARSE = 'sparse-compressed-rows'


@dataclasses.dataclass(frozen=True, eq=False)
class QpProblem:
    """
    Validated QP data. Use build_problem to construct one.
    Dense problems hold read-only numpy arrays, sparse problems hold canonical CSR matrices
    for P, A and C (sorted indices, no duplicates, no stored zeros).
    """

    P: object
    q: np.ndarray
    A: object
    b: np.ndarray
    C: object
    d: np.ndarray
    storage_mode: StorageMode = StorageMode.DENSE
    asymmetry: float = 0.0

    @property
    def n(self):
        return self.q.shape[0]

    @property
    def p(self):
        return self.b.shape[0]

    @property
    def m(self):
        return self.d.shape[0]

    @property
    def is_sparse(self):
        return self.storage_mode is StorageMode.SPARSE

    def objective(self, z):
        """:return: f(z) = 1/2 z'Pz + q'z"""
        z = np.asarray(z, dtype=float)
        return 0.5 * float(z @ (self.P @ z)) + float(self.q @ z)

    def block(self, name):
        if name not in PARAMETER_BLOCKS:
            raise UnknownParameterBlockError(name)
        return getattr(self, name)

    def dense(self, name):
        """:return: the data block as a dense array"""
        value = self.block(name)
        return value.toarray() if sp.issparse(value) else np.asarray(value)

    def replace(self, **blocks):
        """
        :param blocks: data blocks to replace, e.g. q=new_q
        :return: a new validated problem in the same storage mode
        """
        for name in blocks:
            if name not in PARAMETER_BLOCKS:
                raise UnknownParameterBlockError(name)
        data = {name: blocks.get(name, getattr(self, name)) for name in PARAMETER_BLOCKS}
        return build_problem(storage_mode=self.storage_mode, **data)


def _as_dense(value, shape, name):
    if value is None:
        return np.zeros(shape)
    if sp.issparse(value):
        value = value.toarray()
    array = np.array(value, dtype=float)
    if array.size == 0:
        array = array.reshape(shape)
    return array


def _as_sparse(value, shape):
    if value is None:
        return sp.csr_matrix(shape)
    if sp.issparse(value):
        matrix = sp.csr_matrix(value, dtype=float, copy=True)
    else:
        array = np.array(value, dtype=float)
        matrix = sp.csr_matrix(array.reshape(shape) if array.size == 0 else array)
    return matrix


def _canonicalize(matrix):
    matrix.sum_duplicates()
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


def _check_finite(name, values):
    if not np.all(np.isfinite(values)):
        raise NonFiniteDataError('{} contains non-finite entries'.format(name))


def _freeze(array):
    array.flags.writeable = False
    return array


def build_problem(P, q, A=None, b=None, C=None, d=None, storage_mode=None, p_upper_only=False):
    """
    Validate and canonicalize the QP data.

    :param P: symmetric positive definite n x n matrix, dense or scipy.sparse
    :param q: n-vector
    :param A: p x n equality matrix, None for p = 0
    :param b: p-vector
    :param C: m x n inequality matrix, None for m = 0
    :param d: m-vector
    :param storage_mode: StorageMode or its value; defaults to sparse when any matrix is
        sparse, dense otherwise
    :param p_upper_only: P holds only its upper triangle, mirror it
    :return: QpProblem with P symmetrized
    """
    if storage_mode is None:
        storage_mode = StorageMode.SPARSE if any(sp.issparse(x) for x in (P, A, C)) \
            else StorageMode.DENSE
    storage_mode = StorageMode(storage_mode)

    q = np.array(q, dtype=float).reshape(-1)
    n = q.shape[0]
    b = np.zeros(0) if b is None else np.array(b, dtype=float).reshape(-1)
    d = np.zeros(0) if d is None else np.array(d, dtype=float).reshape(-1)
    p, m = b.shape[0], d.shape[0]

    if storage_mode is StorageMode.SPARSE:
        P, A, C = _as_sparse(P, (n, n)), _as_sparse(A, (p, n)), _as_sparse(C, (m, n))
    else:
        P, A, C = _as_dense(P, (n, n), 'P'), _as_dense(A, (p, n), 'A'), _as_dense(C, (m, n), 'C')

    for name, matrix, shape in (('P', P, (n, n)), ('A', A, (p, n)), ('C', C, (m, n))):
        if matrix.ndim != 2 or matrix.shape != shape:
            raise DimensionMismatchError(
                '{} has shape {}, expected {}'.format(name, matrix.shape, shape)
            )

    for name, values in (('P', P), ('A', A), ('C', C)):
        _check_finite(name, values.data if sp.issparse(values) else values)
    for name, values in (('q', q), ('b', b), ('d', d)):
        _check_finite(name, values)

    if p_upper_only:
        if sp.issparse(P):
            P = sp.triu(P, format='csr') + sp.triu(P, k=1, format='csr').T
        else:
            P = np.triu(P) + np.triu(P, k=1).T

    asymmetry = _relative_asymmetry(P)
    if asymmetry > SYMMETRY_REPAIR_TOLERANCE:
        raise AsymmetricMatrixError(asymmetry, SYMMETRY_REPAIR_TOLERANCE)
    if asymmetry > SYMMETRY_TOLERANCE:
        log('P is asymmetric (relative deviation {:.3e}), symmetrizing it'.format(asymmetry))

    if sp.issparse(P):
        P = _canonicalize(sp.csr_matrix((P + P.T) * 0.5))
        A, C = _canonicalize(A), _canonicalize(C)
    else:
        P = _freeze(0.5 * (P + P.T))
        A, C = _freeze(A), _freeze(C)

    return QpProblem(
        P=P,
        q=_freeze(q),
        A=A,
        b=_freeze(b),
        C=C,
        d=_freeze(d),
        storage_mode=storage_mode,
        asymmetry=asymmetry,
    )


def _relative_asymmetry(P):
    if sp.issparse(P):
        norm = sparse_norm(P)
        deviation = sparse_norm(P - P.T)
    else:
        norm = np.linalg.norm(P)
        deviation = np.linalg.norm(P - P.T)
    if norm == 0:
        return 0.0
    return float(deviation / norm)


def check_positive_definite(problem, probe_count=0, seed=0):
    """
    Check P > 0 with a Cholesky factorization whose pivots must all exceed
    1e-12 times the largest diagonal entry.

    :param problem: QpProblem
    :param probe_count: number of random quadratic-form probes z'Pz > 0 tried before factorizing
    :param seed: seed of the probe directions
    :return: True if P is positive definite
    """
    P = problem.P
    n = problem.n
    if n == 0:
        return True
    diagonal = P.diagonal()
    if np.any(diagonal <= 0):
        return False

    if probe_count:
        rng = np.random.default_rng(seed)
        probes = rng.standard_normal((n, probe_count))
        if np.any(np.einsum('ij,ij->j', probes, P @ probes) <= 0):
            return False

    threshold = PIVOT_TOLERANCE * float(diagonal.max())
    if sp.issparse(P):
        from dxpp.core.exceptions import FactorizationError
        from dxpp.core.linalg.factor import FactorOptions, spd_factorize

        try:
            factor = spd_factorize(P, options=FactorOptions(strategy='sparse'))
        except FactorizationError:
            return False
        return factor.min_pivot > threshold

    factor, info = lapack.dpotrf(np.array(P, dtype=float), lower=True)
    if info != 0:
        return False
    return float(np.min(np.diag(factor))) ** 2 > threshold


@dataclasses.dataclass
class DataGradient:
    """
    One entry per data block of the QP. None stands for a zero block, which lets large
    sparse problems skip dense n x n gradients they do not need.
    """

    dP: Optional[np.ndarray] = None
    dq: Optional[np.ndarray] = None
    dA: Optional[np.ndarray] = None
    db: Optional[np.ndarray] = None
    dC: Optional[np.ndarray] = None
    dd: Optional[np.ndarray] = None

    def __post_init__(self):
        for name in PARAMETER_BLOCKS:
            value = getattr(self, 'd' + name)
            if value is not None:
                if sp.issparse(value):
                    value = value.toarray()
                setattr(self, 'd' + name, np.asarray(value, dtype=float))
        if self.dP is not None:
            # only the symmetric part of P matters
            self.dP = 0.5 * (self.dP + self.dP.T)

    @classmethod
    def zeros(cls, problem):
        n, p, m = problem.n, problem.p, problem.m
        return cls(
            dP=np.zeros((n, n)),
            dq=np.zeros(n),
            dA=np.zeros((p, n)),
            db=np.zeros(p),
            dC=np.zeros((m, n)),
            dd=np.zeros(m),
        )

    def get(self, name):
        if name not in PARAMETER_BLOCKS:
            raise UnknownParameterBlockError(name)
        return getattr(self, 'd' + name)

    def as_dict(self):
        """:return: dict from block name to array, zero blocks left out"""
        return {
            name: getattr(self, 'd' + name)
            for name in PARAMETER_BLOCKS
            if getattr(self, 'd' + name) is not None
        }

    def inner(self, other):
        """:return: sum over the blocks of the elementwise products with another DataGradient"""
        total = 0.0
        for name, value in self.as_dict().items():
            theirs = other.get(name)
            if theirs is not None:
                total += float(np.sum(value * theirs))
        return total


def block_size(problem, name):
    """:return: number of scalar parameters in the data block"""
    n, p, m = problem.n, problem.p, problem.m
    sizes = {'P': n * n, 'q': n, 'A': p * n, 'b': p, 'C': m * n, 'd': m}
    if name not in sizes:
        raise UnknownParameterBlockError(name)
    return sizes[name]


def block_shape(problem, name):
    n, p, m = problem.n, problem.p, problem.m
    shapes = {'P': (n, n), 'q': (n,), 'A': (p, n), 'b': (p,), 'C': (m, n), 'd': (m,)}
    if name not in shapes:
        raise UnknownParameterBlockError(name)
    return shapes[name]


def normalize_blocks(blocks):
    """
    :param blocks: None or 'all' for every block, a block name, or an iterable of names
    :return: tuple of block names in canonical order
    """
    if blocks is None or blocks == 'all':
        return PARAMETER_BLOCKS
    if isinstance(blocks, str):
        blocks = [item.strip() for item in blocks.split(',') if item.strip()]
    for name in blocks:
        if name not in PARAMETER_BLOCKS:
            raise UnknownParameterBlockError(name)
    return tuple(name for name in PARAMETER_BLOCKS if name in blocks)
