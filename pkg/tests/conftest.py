import random

import pytest

from workbench.features import extract_corpus
from workbench.fixtures import generate
from workbench.kernel import GF, QQ
from workbench.parser import parse_corpus

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        detail = dict(report.user_properties).get("detail", "")
        _acceptance.append((number, title, report.outcome, report.duration, detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration, detail in sorted(_acceptance):
        status = "PASS" if outcome == "passed" else "FAIL"
        extra = f"; {detail}" if detail else ""
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.2f}s{extra})")


@pytest.fixture(params=["q", "gf101"])
def field(request):
    return QQ if request.param == "q" else GF(101)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def fixture_sources():
    return generate()


@pytest.fixture(scope="session")
def fixture_corpus(fixture_sources):
    return parse_corpus(fixture_sources)


@pytest.fixture(scope="session")
def fixture_table(fixture_corpus):
    return extract_corpus(fixture_corpus)
