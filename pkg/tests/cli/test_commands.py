import json

from dxpp.cli import dxpp
from dxpp.core.manifest import read_csv
from dxpp.core.problem import build_problem
from dxpp.core.problem_file import read_metadata, write_problem


def test_gen_and_single(runner, tmp_path):
    path = str(tmp_path / 'simplex.json')
    result = runner.invoke(dxpp, ['gen', 'simplex', path, '--size', '3', '--seed', '4'])
    assert result.exit_code == 0, result.output
    assert read_metadata(path)['seed'] == 4

    result = runner.invoke(dxpp, ['single', path])
    assert result.exit_code == 0, result.output
    assert 'status: optimal' in result.output
    assert 'dz*/dx =' in result.output

    r_path = tmp_path / 'r.json'
    r_path.write_text(json.dumps([1.0, 0.0, 0.0]))
    result = runner.invoke(dxpp, ['single', path, '--r', str(r_path)])
    assert result.exit_code == 0, result.output
    assert 'vjp dq = ' in result.output


def test_single_malformed_file(runner, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"n": 2')
    result = runner.invoke(dxpp, ['single', str(path)])
    assert result.exit_code == 2
    assert 'malformed problem file' in result.output


def test_single_missing_file(runner, tmp_path):
    result = runner.invoke(dxpp, ['single', str(tmp_path / 'missing.json')])
    assert result.exit_code == 2


def test_single_indefinite_objective(runner, tmp_path):
    path = str(tmp_path / 'indefinite.json')
    write_problem(build_problem(P=[[1.0, 0.0], [0.0, -1.0]], q=[0.0, 0.0]), path)
    result = runner.invoke(dxpp, ['single', path])
    assert result.exit_code == 1
    assert isinstance(result.exception, SystemExit)
    assert 'error: matrix is not positive definite' in result.output
    assert 'Traceback' not in result.output


def test_gen_degenerate(runner, tmp_path):
    path = str(tmp_path / 'degenerate.json')
    result = runner.invoke(dxpp, ['gen', 'degenerate', path, '--size', '8',
                                  '--kind', 'weakly_active'])
    assert result.exit_code == 0, result.output
    metadata = read_metadata(path)
    assert metadata['size'] == {'n': 8, 'kind': 'weakly_active'}
    assert 'ground_truth' in metadata


def test_gen_pair_sizes(runner, tmp_path):
    path = str(tmp_path / 'portfolio.json')
    result = runner.invoke(dxpp, ['gen', 'portfolio', path, '--size', '2x3'])
    assert result.exit_code == 0, result.output
    assert '(n=12, p=2, m=26)' in result.output

    result = runner.invoke(dxpp, ['gen', 'chain', path, '--size', '4'])
    assert result.exit_code == 2


def test_gen_invalid_size(runner, tmp_path):
    result = runner.invoke(dxpp, ['gen', 'chain', str(tmp_path / 'chain.json'),
                                  '--size', '1x2'])
    assert result.exit_code == 2


def test_bench(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'bench', '--family', 'simplex',
                                  '--sizes', '4,8', '--repetitions', '1', '--no-kkt'])
    assert result.exit_code == 0, result.output
    assert 'backward_exponent=' in result.output
    rows = read_csv(str(out_dir / 'bench.csv'))
    assert [row['n'] for row in rows] == ['4', '8']
    assert rows[0]['kkt_backward_ms'] == 'nan'


def test_bench_bad_sizes(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'bench', '--sizes', '4x2'])
    assert result.exit_code == 2


def test_delta_sweep(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'delta-sweep', '--size', '6x3',
                                  '--deltas', '1e-2,1e-6'])
    assert result.exit_code == 0, result.output
    rows = read_csv(str(out_dir / 'delta-sweep.csv'))
    assert [float(row['delta']) for row in rows] == [1e-2, 1e-6]


def test_delta_sweep_bad_deltas(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'delta-sweep', '--deltas', 'small'])
    assert result.exit_code == 2


def test_verbose(runner, out_dir):
    result = runner.invoke(dxpp, ['--verbose', '--out', str(out_dir), 'delta-sweep',
                                  '--size', '5x2', '--deltas', '1e-3'])
    assert result.exit_code == 0, result.output
