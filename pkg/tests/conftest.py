import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from usolib.enumeration import census, enumerate_all


@pytest.fixture(scope="session")
def all_usos_3():
    acc = []
    enumerate_all(3, acc.append)
    return acc


@pytest.fixture(scope="session")
def all_usos_2():
    acc = []
    enumerate_all(2, acc.append)
    return acc


@pytest.fixture(scope="session")
def census_3():
    return census(3)
