import pytest

from hochstar.poly import parse_poly
from hochstar.starprod import PoissonStructure

ACCEPTANCE_LINES = []


def sl2():
    return PoissonStructure(3, {(0, 1): parse_poly("2*x2", 3),
                                (0, 2): parse_poly("-2*x3", 3),
                                (1, 2): parse_poly("x1", 3)})


def quadratic():
    # omega_ij = x_i x_j satisfies Jacobi in any dimension
    return PoissonStructure(3, {(0, 1): parse_poly("x1*x2", 3),
                                (0, 2): parse_poly("x1*x3", 3),
                                (1, 2): parse_poly("x2*x3", 3)})


def invalid():
    return PoissonStructure(3, {(0, 1): parse_poly("x1", 3), (0, 2): parse_poly("x2", 3)})


@pytest.fixture
def moyal():
    return PoissonStructure.moyal()


@pytest.fixture
def so3():
    return PoissonStructure.so3()


@pytest.fixture
def heisenberg():
    return PoissonStructure.heisenberg()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
