import numpy as np
import pytest

from qlogic import Algebra, parse_algebra_spec

FACTOR_KINDS = ["R(4)", "C(3)", "H(3)", "O3", "spin(4)"]
ALGEBRAS = FACTOR_KINDS + ["R(3)", "C(4)", "C(3) + R(3)", "C(3) + R(4) + H(3)", "spin(3) + R(2)", "R(1) + C(2)"]

_acceptance_lines = []


def algebra(spec):
    return Algebra(parse_algebra_spec(spec))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture(params=FACTOR_KINDS)
def simple_algebra(request):
    return algebra(request.param)


@pytest.fixture(params=ALGEBRAS)
def any_algebra(request):
    return algebra(request.param)


@pytest.fixture
def record_criterion():
    def record(number, title, passed, value):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} ({value})")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
