import json
import pathlib
import sys

import pytest

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE))

CRITERIA = {
    1: "determinant identity and h^- for p <= 23",
    2: "p=5 Jacobian value and reduction",
    3: "shadow determinant = 2 for even d <= 32",
    4: "local density closed form vs enumeration",
    5: "window measure closed forms vs quadrature",
    6: "shape parameters, closed form vs basis, prod <= 500",
    7: "complete invariance, prod <= 300",
    8: "Gram determinant and tame change of basis",
    9: "constant-free window ratios at p=3, X=1e12",
    10: "micro-census at p=3, X=675",
}

_outcomes: dict[int, list[bool]] = {}


@pytest.fixture(scope="session")
def frozen():
    return json.loads((HERE / "fixtures" / "frozen.json").read_text(encoding="utf-8"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for n in getattr(report, "criteria", ()):
            _outcomes.setdefault(n, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = tuple(m.args[0] for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in CRITERIA.items():
        res = _outcomes.get(n)
        if res is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status}: {name}")
