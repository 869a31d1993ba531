import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.data_loading.che_builtin import cheAlgebra, cheGenerators, chePde  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long numeric sweeps")


@pytest.fixture(scope="session")
def che():
    return chePde()


@pytest.fixture(scope="session")
def generators():
    return cheGenerators()


@pytest.fixture(scope="session")
def algebra():
    return cheAlgebra()


@pytest.fixture
def data_path():
    def join(name):
        return os.path.join(DATA_DIR, name)

    return join
