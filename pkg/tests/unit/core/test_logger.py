from dxpp.core.logger import log


def test_log_enabled(config, capsys):
    config.enable_logging = True
    log('factorized H')
    assert capsys.readouterr().err == 'factorized H\n'


def test_log_disabled(config, capsys):
    config.enable_logging = False
    log('factorized H')
    assert capsys.readouterr().err == ''
