import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from burnside.catalog import CATALOG


@pytest.fixture(scope="session")
def s4():
    return CATALOG.group("S4")


@pytest.fixture(scope="session")
def s5():
    return CATALOG.group("S5")


@pytest.fixture(scope="session")
def a5():
    return CATALOG.group("A5")


@pytest.fixture(scope="session")
def a4():
    return CATALOG.group("A4")


@pytest.fixture(scope="session")
def gl23():
    return CATALOG.group("GL2(3)")


@pytest.fixture(scope="session")
def a5_pattern(a5):
    from burnside.lattice import table_of_marks_brute
    return table_of_marks_brute(a5)
