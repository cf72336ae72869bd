"""Collect acceptance outcomes and print one line per criterion at the end of the run."""

from collections import OrderedDict

import pytest

_OUTCOMES: "OrderedDict[str, dict]" = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion, title = marker.args
    entry = _OUTCOMES.setdefault(criterion, {"title": title, "passed": True, "seen": False})
    if report.when == "call" or report.failed:
        entry["seen"] = True
        entry["passed"] = entry["passed"] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, entry in sorted(_OUTCOMES.items(), key=lambda kv: int(kv[0])):
        if not entry["seen"]:
            verdict = "SKIP"
        else:
            verdict = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"CRITERION {criterion}: {verdict}  {entry['title']}")
