import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}
_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.name.startswith("test_criterion_"):
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _criteria[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid in _criteria and (report.when == "call" or report.failed):
        _outcomes[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, doc in _criteria.items():
        terminalreporter.write_line(f"{_outcomes.get(nodeid, 'NOT RUN'):7} criterion {doc}")
