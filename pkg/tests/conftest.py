import pytest

from .support import w3_problem, w3_table, w3_workflow


@pytest.fixture
def w3():
    return w3_workflow()


@pytest.fixture
def table():
    return w3_table()


@pytest.fixture
def problem():
    return w3_problem()


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\nACCEPTANCE {name}: {outcome}", flush=True)
