from __future__ import annotations

_ACCEPTANCE: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    n = int(report.nodeid.rsplit("_", 1)[1])
    _ACCEPTANCE[n] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        status = _ACCEPTANCE.get(n, "NOT RUN")
        terminalreporter.write_line(f"criterion {n} ({TITLES[n]}): {status}")
