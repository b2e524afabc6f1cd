"""Collects one PASS/FAIL line per acceptance criterion and prints them at the end."""
import time

import pytest

RESULTS = []


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.notes = []

    def note(self, text):
        self.notes.append(text)


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    c = Criterion(number, title)
    start = time.perf_counter()
    yield c
    c.elapsed = time.perf_counter() - start
    rep = getattr(request.node, "rep_call", None)
    c.passed = rep is not None and rep.passed
    RESULTS.append(c)
    print(_line(c))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def _line(c):
    status = "PASS" if c.passed else "FAIL"
    extra = f" [{'; '.join(c.notes)}]" if c.notes else ""
    return f"{status} criterion {c.number:>2}: {c.title} ({c.elapsed:.1f}s){extra}"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(RESULTS, key=lambda c: c.number):
        terminalreporter.write_line(_line(c))
