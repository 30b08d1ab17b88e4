import json

import numpy as np
import pytest

from dxpp.controllers.gen import run_gen
from dxpp.controllers.gradcheck import make_infeasible
from dxpp.controllers.single import degeneracy_warnings, run_single
from dxpp.core.active_set import classify_active_set
from dxpp.core.benchgen import gen_degenerate_qp, known_solution
from dxpp.core.exceptions import ProblemFileError
from dxpp.core.problem_file import write_problem


@pytest.fixture
def simplex_file(tmp_path):
    path = str(tmp_path / 'simplex.json')
    run_gen('simplex', 0, path, n=3)
    return path


def test_single_jacobian(config, simplex_file):
    lines, code = run_single(simplex_file)
    assert code == 0
    assert 'status: optimal' in lines
    assert 'dz*/dq =' in lines
    assert 'dz*/dx =' in lines


def test_single_vjp(config, simplex_file, tmp_path):
    r_path = tmp_path / 'r.json'
    r_path.write_text(json.dumps({'r': [1.0, 0.0, -1.0]}))
    lines, code = run_single(simplex_file, str(r_path))
    assert code == 0
    assert any(line.startswith('vjp dq = ') for line in lines)
    assert any(line.startswith('vjp dx = ') for line in lines)


def test_single_large_n(config, simplex_file):
    lines, code = run_single(simplex_file, jacobian_max_n=2)
    assert code == 0
    assert lines[-1] == 'n = 3 exceeds 2, pass a vector r for a VJP'


def test_single_infeasible(config, random_qp, tmp_path):
    path = str(tmp_path / 'infeasible.json')
    write_problem(make_infeasible(random_qp.problem), path)
    lines, code = run_single(path)
    assert code == 1
    assert lines[1] != 'status: optimal'


def test_single_bad_vector(config, simplex_file, tmp_path):
    r_path = tmp_path / 'r.json'
    r_path.write_text('[1.0, 2.0]')
    with pytest.raises(ProblemFileError):
        run_single(simplex_file, str(r_path))


@pytest.mark.parametrize('kind, message', [
    ('duplicated', 'active constraint rows are linearly dependent'),
    ('weakly_active', 'weakly active inequalities'),
])
def test_degeneracy_warnings(config, kind, message):
    instance = gen_degenerate_qp(kind, 8, 0)
    solution = known_solution(instance)
    active_set = classify_active_set(instance.problem, solution)
    warnings = degeneracy_warnings(instance.problem, solution, active_set, False)
    assert any(warning.startswith(message) for warning in warnings)


def test_margin_warning(config, hand_problem, hand_solution):
    active_set = classify_active_set(hand_problem, hand_solution)
    warnings = degeneracy_warnings(hand_problem, hand_solution, active_set, True)
    assert warnings == ['margin {:.3e} is small for delta = 1e-06'.format(active_set.margin)]
    assert np.isfinite(active_set.margin)
