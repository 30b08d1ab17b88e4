"""
Reading and writing QP problems as JSON documents.

Dense matrices are row-major nested arrays, sparse matrices are stored as
{shape, row_offsets, col_indices, values}. Floats are written with 17 significant
digits so reading a file back gives the same doubles.
A problem file `name.json` may have a metadata sidecar `name.meta.json`.
"""
import json
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from dxpp.core.exceptions import ProblemDataError, ProblemFileError
from dxpp.core.problem import StorageMode, build_problem

FILE_FORMAT = 'dxpp-problem'


def _number(value):
    return format(float(value), '.17g')


def _vector(values):
    return '[' + ', '.join(_number(x) for x in values) + ']'


def _matrix(matrix):
    if sp.issparse(matrix):
        csr = sp.csr_matrix(matrix)
        return '{{"shape": [{}, {}], "row_offsets": {}, "col_indices": {}, "values": {}}}'.format(
            csr.shape[0],
            csr.shape[1],
            json.dumps([int(x) for x in csr.indptr]),
            json.dumps([int(x) for x in csr.indices]),
            _vector(csr.data),
        )
    rows = [_vector(row) for row in np.asarray(matrix)]
    return '[' + ', '.join(rows) + ']'


def dumps_problem(problem):
    """:return: the problem file document as a string"""
    fields = [
        ('format', json.dumps(FILE_FORMAT)),
        ('n', str(problem.n)),
        ('p', str(problem.p)),
        ('m', str(problem.m)),
        ('storage_mode', json.dumps(problem.storage_mode.value)),
        ('P', _matrix(problem.P)),
        ('q', _vector(problem.q)),
        ('A', _matrix(problem.A)),
        ('b', _vector(problem.b)),
        ('C', _matrix(problem.C)),
        ('d', _vector(problem.d)),
    ]
    return '{\n' + ',\n'.join('  "{}": {}'.format(key, value) for key, value in fields) + '\n}\n'


def write_problem(problem, path):
    Path(path).write_text(dumps_problem(problem))


def _read_matrix(value, shape, storage_mode):
    if isinstance(value, dict):
        matrix = sp.csr_matrix(
            (
                np.asarray(value['values'], dtype=float),
                np.asarray(value['col_indices'], dtype=np.int64),
                np.asarray(value['row_offsets'], dtype=np.int64),
            ),
            shape=tuple(value.get('shape', shape)),
        )
        return matrix if storage_mode is StorageMode.SPARSE else matrix.toarray()
    array = np.asarray(value, dtype=float)
    if array.size == 0:
        array = array.reshape(shape)
    return array


def loads_problem(text):
    """
    Parse a problem file document.
    :raises ProblemFileError: if the document is not a valid problem
    """
    try:
        document = json.loads(text)
        n, p, m = int(document['n']), int(document['p']), int(document['m'])
        storage_mode = StorageMode(document.get('storage_mode', StorageMode.DENSE.value))
        return build_problem(
            P=_read_matrix(document['P'], (n, n), storage_mode),
            q=np.asarray(document['q'], dtype=float),
            A=_read_matrix(document['A'], (p, n), storage_mode),
            b=np.asarray(document['b'], dtype=float),
            C=_read_matrix(document['C'], (m, n), storage_mode),
            d=np.asarray(document['d'], dtype=float),
            storage_mode=storage_mode,
        )
    except ProblemDataError as e:
        raise ProblemFileError('invalid problem data: {}'.format(e)) from e
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise ProblemFileError('malformed problem file: {}'.format(e)) from e


def read_problem(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ProblemFileError('cannot read {}: {}'.format(path, e)) from e
    return loads_problem(text)


def metadata_path(path):
    """problem.json -> problem.meta.json"""
    path = Path(path)
    return path.with_name(path.stem + '.meta.json')


def write_metadata(path, family, size, seed, notes=None, **extra):
    """
    Write the sidecar of the problem file at `path`.
    :param size: family specific size descriptor, e.g. {'n': 10, 'm': 5}
    :param extra: further JSON-serializable entries, e.g. ground_truth
    """
    document = dict(family=family, size=size, seed=seed, notes=list(notes or []))
    document.update(extra)
    target = metadata_path(path)
    target.write_text(json.dumps(document, indent=2, default=_to_builtin) + '\n')
    return target


def read_metadata(path):
    """:return: the sidecar of the problem file at `path`, or None if there is none"""
    target = metadata_path(path)
    if not target.exists():
        return None
    try:
        return json.loads(target.read_text())
    except ValueError as e:
        raise ProblemFileError('malformed metadata file {}: {}'.format(target, e)) from e


def read_vector(path, length=None):
    """
    Read a vector file: a JSON array, or a JSON object with the array under "r".
    :param length: expected length, checked if given
    """
    try:
        document = json.loads(Path(path).read_text())
        if isinstance(document, dict):
            document = document['r']
        vector = np.asarray(document, dtype=float).reshape(-1)
    except OSError as e:
        raise ProblemFileError('cannot read {}: {}'.format(path, e)) from e
    except (ValueError, KeyError, TypeError) as e:
        raise ProblemFileError('malformed vector file {}: {}'.format(path, e)) from e
    if length is not None and vector.shape[0] != length:
        raise ProblemFileError(
            'vector in {} has length {}, expected {}'.format(path, vector.shape[0], length)
        )
    if not np.all(np.isfinite(vector)):
        raise ProblemFileError('vector in {} has non-finite entries'.format(path))
    return vector


def _to_builtin(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError('{} is not JSON serializable'.format(type(value).__name__))
