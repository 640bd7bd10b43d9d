import pytest

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed):
        number, title = marker.args
        if report.failed or number not in ACCEPTANCE:
            ACCEPTANCE[number] = ("FAIL" if report.failed else "PASS", title)
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            status, title = ACCEPTANCE[number]
            terminalreporter.write_line(f"criterion {number:2d}  {status}  {title}")
