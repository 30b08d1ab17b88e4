from tests.fixtures.cli import *  # noqa
from tests.fixtures.config import *  # noqa
from tests.fixtures.problems import *  # noqa


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: scaling runs over large instances')
