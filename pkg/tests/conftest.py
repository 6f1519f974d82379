import time

import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        yield
        return
    start = time.perf_counter()
    outcome = yield
    elapsed = time.perf_counter() - start
    item.user_properties.append(("elapsed", elapsed))
    limit = marker.args[2]
    if outcome.excinfo is None and elapsed > limit:
        outcome.force_exception(
            AssertionError(f"runtime {elapsed:.2f} s exceeds limit {limit} s"))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = dict(report.user_properties).get("criterion")
    if number is not None:
        _results[number] = (report.outcome, dict(report.user_properties).get("elapsed"))


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args[0]))
            item.user_properties.append(("title", marker.args[1]))
            item.user_properties.append(("limit", marker.args[2]))
            _results.setdefault(marker.args[0], ("not run", None))
            _titles[marker.args[0]] = (marker.args[1], marker.args[2])


_titles = {}


def pytest_terminal_summary(terminalreporter):
    if not _titles:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_titles):
        title, limit = _titles[number]
        outcome, elapsed = _results.get(number, ("not run", None))
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        timing = f"{elapsed:.2f} s / {limit} s" if elapsed is not None else f"limit {limit} s"
        terminalreporter.write_line(f"{status} criterion {number}: {title} ({timing})")
