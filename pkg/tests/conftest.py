import pytest

from parityideals.poly import Field, RingSpec


@pytest.fixture
def R3():
    return RingSpec(3)


@pytest.fixture
def R2():
    return RingSpec(2)


@pytest.fixture
def GF2():
    return Field(2)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
