"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_results = {}  # number -> {"title": str, "parts": [(name, status, detail)]}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "parts": {}})
    if report.when == "setup" and report.outcome != "passed" and not hasattr(report, "wasxfail"):
        entry["parts"][item.name] = ("FAIL", "setup error")
    elif report.when == "call":
        detail = dict(item.user_properties).get("detail", "")
        if hasattr(report, "wasxfail"):
            entry["parts"][item.name] = ("FAIL", f"expected failure: {report.wasxfail}")
        elif report.passed:
            entry["parts"][item.name] = ("PASS", detail)
        else:
            entry["parts"][item.name] = ("FAIL", detail or "assertion failed")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        parts = entry["parts"]
        status = "PASS" if parts and all(s == "PASS" for s, _ in parts.values()) else "FAIL"
        tr.write_line(f"criterion {number}: {status}  {entry['title']}")
        for name, (s, detail) in parts.items():
            if detail or s != "PASS":
                tr.write_line(f"    {s:4}  {name}: {detail}")
