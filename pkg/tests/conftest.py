import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, derandomize=True, deadline=None)
settings.load_profile("default")

_criteria: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not (rep.when == "setup" and rep.failed)):
        return
    number, title = marker.args
    _criteria.setdefault(number, (title, []))[1].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, results = _criteria[number]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  ({sum(results)}/{len(results)} tests)")
