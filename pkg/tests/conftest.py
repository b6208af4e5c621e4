from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    entry = _criteria.setdefault(key, {"passed": 0, "failed": 0, "names": []})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.passed:
            entry["passed"] += 1
        else:
            entry["failed"] += 1
            entry["names"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: (int(str(k).rstrip("ab")), str(k))):
        e = _criteria[key]
        status = "PASS" if e["failed"] == 0 else "FAIL"
        line = f"criterion {key}: {status} ({e['passed']} passed, {e['failed']} failed)"
        if e["names"]:
            line += " -> " + ", ".join(e["names"])
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def three_points():
    """Labels and distances for the points 0, 1, 3 on a line."""
    pts = np.array([0.0, 1.0, 3.0])
    return ["p0", "p1", "p3"], np.abs(pts[:, None] - pts[None, :])


@pytest.fixture
def data_dir():
    return DATA
