import json

from dxpp.cli import dxpp
from dxpp.core.manifest import read_csv


def test_gradcheck(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'gradcheck', '--sizes', '6x3',
                                  '--seeds', '2'])
    assert result.exit_code == 0, result.output
    rows = read_csv(str(out_dir / 'gradcheck.csv'))
    assert [row['seed'] for row in rows] == ['0', '1']
    assert all(float(row['eps_rel']) < 1e-3 for row in rows)

    with open(str(out_dir / 'gradcheck.manifest.json')) as f:
        manifest = json.load(f)
    assert manifest['command'] == 'gradcheck'
    assert manifest['seeds'] == [0, 1]
    assert manifest['failures'] == 0
    assert manifest['parameters']['sizes'] == [[6, 3]]


def test_gradcheck_injected_infeasibility(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'gradcheck', '--sizes', '6x3',
                                  '--seeds', '2', '--inject-infeasible', '1'])
    assert result.exit_code == 1
    rows = read_csv(str(out_dir / 'gradcheck.csv'))
    assert rows[-1]['seed'] == '1'
    assert rows[-1]['error'] == 'SolverFailureError'


def test_gradcheck_tolerance(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'gradcheck', '--sizes', '6x3',
                                  '--seeds', '1', '--tolerance', '0'])
    assert result.exit_code == 1


def test_gradcheck_threads(runner, out_dir):
    result = runner.invoke(dxpp, ['--out', str(out_dir), 'gradcheck', '--sizes', '6x3',
                                  '--seeds', '3', '--threads', '2'])
    assert result.exit_code == 0, result.output
    assert len(read_csv(str(out_dir / 'gradcheck.csv'))) == 3


def test_gradcheck_config_file(runner, out_dir, tmp_path):
    config_path = tmp_path / 'dxpp.cfg'
    config_path.write_text('[harness]\nSIZES=5x2\nSEEDS=1\n')
    result = runner.invoke(dxpp, ['--config', str(config_path), '--out', str(out_dir),
                                  'gradcheck'])
    assert result.exit_code == 0, result.output
    rows = read_csv(str(out_dir / 'gradcheck.csv'))
    assert [(row['n'], row['m']) for row in rows] == [('5', '2')]


def test_gradcheck_bad_sizes(runner, out_dir):
    for sizes in ['10x', '10', 'axb']:
        result = runner.invoke(dxpp, ['--out', str(out_dir), 'gradcheck', '--sizes', sizes])
        assert result.exit_code == 2
