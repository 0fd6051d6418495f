import pytest
from hypothesis import settings

from aspherix.corpus import BUNDLED, load_presentation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_acceptance = []


@pytest.fixture
def corpus():
    return {p.stem: load_presentation(p) for p in sorted(BUNDLED.glob("*.pres"))}


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
