import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from multimodular import IndicatorSet, IntBox, QuadraticFunction, kernels  # noqa: E402
from multimodular.core import TableFunction  # noqa: E402

H = Fraction(1, 2)

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def A3():
    return QuadraticFunction([[1, 1, 0], [1, 2, 1], [0, 1, 1]])


@pytest.fixture(scope="session")
def A3t():
    return QuadraticFunction([[2, 1, 1], [1, 1, 0], [1, 0, 1]])


@pytest.fixture(scope="session")
def B3():
    return QuadraticFunction([[1, 0, -1], [0, 1, 0], [-1, 0, 1]])


@pytest.fixture(scope="session")
def B3t():
    return QuadraticFunction([[1, -1, 1], [-1, 2, -1], [1, -1, 1]])


@pytest.fixture(scope="session")
def A4():
    return QuadraticFunction([[3, 2, 1, 0], [2, 3, 2, 1], [1, 2, 2, 1], [0, 1, 1, 1]])


@pytest.fixture(scope="session")
def A4t():
    return QuadraticFunction([[5 * H, 1, -H], [1, 1, 0], [-H, 0, H]])


@pytest.fixture(scope="session")
def S1():
    return IndicatorSet([(0, 0, 0), (1, 0, -1)])


@pytest.fixture(scope="session")
def S2():
    return IndicatorSet([(0, 0, 0), (0, 1, 0)])


@pytest.fixture(scope="session")
def T1():
    return IndicatorSet([(0, 0, 0), (1, 1, 0)])


@pytest.fixture(scope="session")
def T2():
    return IndicatorSet([(0, 0, 0), (0, 1, 1)])


@pytest.fixture(scope="session")
def sep2():
    box = IntBox.cube(-2, 2, 2)
    return TableFunction.from_callable(box, lambda x: x[0] ** 2 + x[1] ** 2)


@pytest.fixture(scope="session")
def a3_table(A3):
    return A3.materialize(IntBox.cube(-2, 2, 3))


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
