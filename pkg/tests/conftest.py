import pytest

CRITERIA = {}
NOTES = {}


@pytest.fixture
def criterion_note(request):
    """Attach a measured value to the criterion summary line."""
    n = request.node.get_closest_marker("criterion").args[0]
    return lambda text: NOTES.setdefault(n, []).append(text)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    n = marker.args[0]
    ok = report.passed or (report.when == "setup" and not report.failed)
    if report.when == "setup" and ok:
        return
    CRITERIA[n] = CRITERIA.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        note = "; ".join(NOTES.get(n, []))
        line = f"criterion {n:2d}: {'PASS' if CRITERIA[n] else 'FAIL'}"
        terminalreporter.write_line(f"{line}  ({note})" if note else line)
