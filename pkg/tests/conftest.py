import random

import pytest

from uinvariants.scalars import DEFAULT_PRIME, FieldSpec

_ACCEPTANCE = []


@pytest.fixture
def Q():
    return FieldSpec.rational()


@pytest.fixture
def Fp():
    return FieldSpec.prime(DEFAULT_PRIME)


@pytest.fixture(params=["Q", "Fp"])
def field(request):
    if request.param == "Q":
        return FieldSpec.rational()
    return FieldSpec.prime(DEFAULT_PRIME)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _ACCEPTANCE:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
