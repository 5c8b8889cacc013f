import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n = props["criterion"]
    row = _ACCEPTANCE.setdefault(n, {"title": props.get("title", ""), "ok": True, "failed": []})
    if report.failed:
        row["ok"] = False
        row["failed"].append(report.nodeid.split("::")[-1])


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    m = request.node.get_closest_marker("criterion")
    if m is not None:
        record_property("criterion", m.args[0])
        record_property("title", m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        row = _ACCEPTANCE[n]
        status = "PASS" if row["ok"] else "FAIL"
        line = f"[{status}] criterion {n}: {row['title']}"
        if row["failed"]:
            line += "  (failed: " + ", ".join(row["failed"]) + ")"
        tr.write_line(line)
