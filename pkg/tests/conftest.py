import random

import pytest

import hwspinc as hw
from hwspinc.smatrix import parse_matrix


@pytest.fixture
def rng():
    return random.Random(20240901)


@pytest.fixture(scope="session")
def defining3():
    """The 2 x 3 defining matrix of the three-dimensional HW-manifold."""
    return parse_matrix("132\n213")


@pytest.fixture(scope="session")
def circ3():
    """Its HW completion, the circulant with rows 132 / 213 / 321."""
    return parse_matrix("132\n213\n321")


@pytest.fixture(scope="session")
def delta3():
    """The self-conjugate circulant with rows 123 / 312 / 231."""
    return parse_matrix("123\n312\n231")


@pytest.fixture(scope="session")
def classify5():
    return hw.classify_hw(5)


@pytest.fixture(scope="session")
def classify7():
    return hw.classify_hw(7)
