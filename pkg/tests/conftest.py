import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_outcomes: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = int(report.nodeid.split("test_criterion_")[1][:2])
        _outcomes[n] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", {})
    terminalreporter.section("acceptance criteria")
    for n in range(1, 13):
        if n not in _outcomes:
            continue
        ok = _outcomes[n] == "passed"
        detail = verdicts.get(n, (None, ""))[1]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
