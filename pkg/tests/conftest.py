import pytest

from ssbim.coxeter import CoxeterSystem
from ssbim.hecke import HeckeAlgebra
from ssbim.realization import cartan_matrix, standard_realization


def coxeter(kind: str, cap=None) -> CoxeterSystem:
    return CoxeterSystem(cartan_matrix(kind)[1], (), cap)


@pytest.fixture(scope="session")
def A2():
    return coxeter("A2")


@pytest.fixture(scope="session")
def B2():
    return coxeter("B2")


@pytest.fixture(scope="session")
def H_A2(A2):
    return HeckeAlgebra.of(A2)


@pytest.fixture(scope="session")
def H_B2(B2):
    return HeckeAlgebra.of(B2)


@pytest.fixture(scope="session")
def real_A2():
    return standard_realization("A2")


@pytest.fixture(scope="session")
def real_A1():
    return standard_realization("A1")


@pytest.fixture(scope="session")
def real_B2():
    return standard_realization("B2")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:  # pragma: no cover
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
