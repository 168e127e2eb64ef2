import re
from collections import OrderedDict

_CRITERIA = {
    1: "(-1)-class counts",
    2: "conic-class counts",
    3: "conic table fidelity",
    4: "reducible-fiber counts",
    5: "fiber classification",
    6: "admissibility and Euler sums",
    7: "NS lattices",
    8: "invariant formulas",
    9: "Weyl orbit cross-validation",
    10: "completeness oracle",
}
_NAME = re.compile(r"test_criterion_(\d+)_\w+(\[(.*)\])?")
_results: "OrderedDict[int, list[tuple[str, str]]]" = OrderedDict()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _NAME.search(report.nodeid)
    if not m:
        return
    label = m.group(3) or ""
    _results.setdefault(int(m.group(1)), []).append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        failed = [label or "-" for label, outcome in outcomes if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        extra = f"  (failing: degree {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {n:2d} {_CRITERIA[n]}: {status}{extra}")
