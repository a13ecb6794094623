import pytest
from hypothesis import HealthCheck, settings

from bettishape.parsing import parse_ideal

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

REF_TEXT = "ring x1..x4; I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)"


@pytest.fixture(scope="session")
def ref_ideal():
    return parse_ideal(REF_TEXT).ideal


@pytest.fixture(scope="session")
def xy_ideal():
    return parse_ideal("(x^3, x^2*y^2, y^3)").monomial


ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and (report.when == "call" or (report.when == "setup" and report.failed)):
        line = f"[{'PASS' if report.passed else 'FAIL'}] {marker.args[0]}"
        ACCEPTANCE_LINES.append(line)
        # also shown inline with -s
        print("\n" + line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
