import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, text = marker
    entry = _criteria.setdefault(number, {"text": text, "passed": 0, "failed": 0})
    if report.outcome == "failed":
        entry["failed"] += 1
    elif report.when == "call" and report.outcome == "passed":
        entry["passed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "FAIL" if e["failed"] else "PASS"
        terminalreporter.write_line(
            f"criterion {number:2d}: {status}  ({e['passed']} passed, {e['failed']} failed)  {e['text']}"
        )
