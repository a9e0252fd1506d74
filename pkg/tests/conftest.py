import sys

import pytest

from heckesign.qexpand import DirichletCharacter, builtin_table, delta_table, twist


@pytest.fixture(scope="session")
def delta():
    return delta_table(1000)


@pytest.fixture(scope="session")
def quartic_psi():
    """Character mod 5 with psi(2) = i."""
    return DirichletCharacter.from_exponents(5, (1,))


@pytest.fixture(scope="session")
def twisted(delta, quartic_psi):
    """Delta twisted by the quartic character mod 5: level 25, quadratic nebentypus."""
    return twist(delta_table(400), quartic_psi, "25.12.tw")


@pytest.fixture(scope="session")
def level11():
    return builtin_table("11.2.a.a", 500)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
