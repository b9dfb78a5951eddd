"""Per-criterion pass/fail summary for the acceptance suite."""

CRITERIA = {
    1: "second-order pipeline: predicted cofactor is exact",
    2: "orthogonal-polynomial family reproduction",
    3: "divergence identity k_q + 2 k_f = div",
    4: "Lotka-Volterra invariant reproduction",
    5: "new family invariant reproduction",
    6: "reversible centers: certificates, drift and return",
    7: "conservation in the non-Liouvillian regime",
    8: "special-function suite",
    9: "parser round trip and error offsets",
    10: "negative controls",
}

_owner = {}
_outcome = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _owner[item.nodeid] = m.args[0]


def pytest_runtest_logreport(report):
    n = _owner.get(report.nodeid)
    if n is None or (report.when != "call" and report.passed):
        return
    ok = report.passed and _outcome.get(n, True)
    _outcome[n] = ok


def pytest_terminal_summary(terminalreporter):
    if not _outcome:
        return
    terminalreporter.section("acceptance criteria")
    for n, text in CRITERIA.items():
        if n not in _outcome:
            state = "NOT RUN"
        else:
            state = "PASS" if _outcome[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {state:7s} {text}")
