from __future__ import annotations

import pytest

from data import COUNTEREXAMPLE_TEXT

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")


@pytest.fixture
def files(tmp_path):
    """Write small input files and return a name -> path mapping."""
    contents = {
        "c5.txt": "5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
        "k3.txt": "3\n1 2\n1 3\n2 3\n",
        "p3.txt": "3\n1 2\n2 3\n",
        "counterexample.txt": COUNTEREXAMPLE_TEXT,
        "a1.txt": "2 2\n1 0\n0 1\n",
        "a2.txt": "2 3\n1 0 1\n0 1 1\n",
        "triangle.txt": "3\n1 2\n1 3\n2 3\n",
        "bad.txt": "3\n1 4\n",
    }
    out = {}
    for name, text in contents.items():
        path = tmp_path / name
        path.write_text(text)
        out[name] = str(path)
    return out
