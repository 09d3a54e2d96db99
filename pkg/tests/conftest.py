import pytest

from insdel_rs._backend import HAS_NUMBA
from insdel_rs.finite_field import BaseField

BACKENDS = ["numpy"] + (["numba"] if HAS_NUMBA else [])

ACCEPTANCE = {}


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def gf7():
    return BaseField(7)


@pytest.fixture(scope="session")
def gf8():
    return BaseField(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return BaseField(3, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=str):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
