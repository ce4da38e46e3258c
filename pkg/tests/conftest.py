import re

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion\[criterion_(\d+)\]", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        _results[k] = "PASS" if report.passed and _results.get(k) != "FAIL" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        terminalreporter.write_line(f"CRITERION {k}: {_results[k]}")
