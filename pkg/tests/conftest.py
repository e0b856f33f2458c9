import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.fixture
def detail(request):
    """Append a measured quantity to the acceptance report line of this test."""
    def add(text):
        request.node.user_properties.append(("detail", text))
    return add


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed):
        number, title = marker.args
        entry = _RESULTS.setdefault(number, {"title": title, "passed": True, "details": []})
        entry["passed"] &= report.passed
        entry["details"] += [v for k, v in item.user_properties if k == "detail" and v not in entry["details"]]
    return report


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        status = "PASS" if entry["passed"] else "FAIL"
        extra = "; ".join(entry["details"])
        terminalreporter.write_line(f"[{status}] {number:>2}. {entry['title']}" + (f"  ({extra})" if extra else ""))
