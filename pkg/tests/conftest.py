import numpy as np
import pytest

from navier_ide.problem import Problem, example1, example2


@pytest.fixture(scope="session")
def ex1():
    return example1()


@pytest.fixture(scope="session")
def ex2():
    return example2()


@pytest.fixture(scope="session")
def linear_problem():
    """u'''' = pi^4 sin(pi x), zero kernel; exact solution sin(pi x)."""
    pi = np.pi
    return Problem(
        name="linear",
        f=lambda x, u, v, z: pi**4 * np.sin(pi * x),
        kernel=lambda x, t: 0.0 * x * t,
        exact_u=lambda x: np.sin(pi * x),
        exact_v=lambda x: pi * np.cos(pi * x),
    )


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
