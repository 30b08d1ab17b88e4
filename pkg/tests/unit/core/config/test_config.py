import configparser

import pytest

from dxpp.core.config.parser import (
    get_environment_var,
    parse_bool,
    parse_literal,
    parse_sizes,
    parse_string,
    split_sizes,
)


def test_init_from(config, config_file):
    """Test whether the example config file reproduces the defaults."""

    config.init_from()
    config.init_from(file=config_file)

    assert config.solver == 'builtin-ipm'
    assert config.eps_abs == 1e-6
    assert config.delta == 1e-6
    assert config.zeta == 10
    assert config.prune_inactive
    assert config.sizes == [(10, 5), (50, 10), (100, 20)]
    assert config.memory_budget == 2 * 1024 ** 3
    assert config.family == 'simplex'


def test_init_from_file(config, tmp_path):
    path = tmp_path / 'test.cfg'
    path.write_text('[penalty]\nDELTA=1e-4\nPRUNE_INACTIVE=False\n'
                    '[harness]\nSIZES=20,100\nTHREADS=3\n')

    config.init_from(file=str(path))

    assert config.delta == 1e-4
    assert not config.prune_inactive
    assert config.sizes == [20, 100]
    assert config.threads == 3
    # untouched sections keep their defaults
    assert config.eps_active == 1e-5


def test_init_from_envvar(config, config_file, monkeypatch):
    monkeypatch.setenv('DXPP_CONFIG', config_file)
    config.init_from(envvar='DXPP_CONFIG', log_verbose=True)
    assert config.seeds == 50


def test_threads_environment_override(config, tmp_path, monkeypatch):
    monkeypatch.setenv('DXPP_THREADS', '4')
    config.reset()
    assert config.threads == 4

    path = tmp_path / 'test.cfg'
    path.write_text('[harness]\nTHREADS=2\n')
    config.init_from(file=str(path))
    assert config.threads == 4


def test_settings_objects(config):
    settings = config.solver_settings(eps_abs=1e-9)
    assert settings.eps_abs == 1e-9
    assert settings.max_iterations == config.max_iterations

    penalty = config.penalty_config(delta=1e-3)
    assert penalty.delta == 1e-3
    assert not penalty.has_weights

    options = config.factor_options(strategy='cg')
    assert options.strategy == 'cg'
    with pytest.raises(ValueError):
        config.factor_options(strategy='qr')


def test_as_dict(config):
    values = config.as_dict()
    assert list(values) == sorted(values)
    assert values['delta'] == config.delta


def test_parser():
    """Test whether the parser reads the right values."""

    parser = configparser.RawConfigParser()
    parser.optionxform = str
    string = 'string-value'
    bool = 'False'
    literal = "['a', 'b', 'c']"
    literal2 = '1e-6'
    sizes = '10x5, 50x10'
    section = 'harness'

    parser.add_section(section)
    parser.set(section, 'string', string)
    parser.set(section, 'bool', bool)
    parser.set(section, 'literal', literal)
    parser.set(section, 'literal2', literal2)
    parser.set(section, 'SIZES', sizes)

    assert parse_string(parser, section, 'string', 'default') == string
    assert parse_string(parser, section, 'missing', 'default') == 'default'
    assert not parse_bool(parser, section, 'bool', 'True')
    assert parse_literal(parser, section, 'literal', 'default') == ['a', 'b', 'c']
    assert parse_literal(parser, section, 'literal2', 'default') == 1e-6
    assert parse_sizes(parser, section, 'SIZES', None) == [(10, 5), (50, 10)]
    assert parse_sizes(parser, 'solver', 'SIZES', [1]) == [1]


def test_split_sizes():
    assert split_sizes('10x5,50X10') == [(10, 5), (50, 10)]
    assert split_sizes('20, 100, 1e3,') == [20, 100, 1000]
    with pytest.raises(ValueError):
        split_sizes('10xfive')


def test_get_environment_var(monkeypatch):
    monkeypatch.setenv('DXPP_TEST_VARIABLE', 'value')
    assert get_environment_var('DXPP_TEST_VARIABLE') == 'value'
    monkeypatch.delenv('DXPP_TEST_VARIABLE')
    assert get_environment_var('DXPP_TEST_VARIABLE') is None
