import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, label): acceptance criterion covered by a test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    num, label = mark.args
    prev = item.config._criteria.get(num, (label, True))
    ok = prev[1] and not rep.failed and not (rep.when == "setup" and rep.skipped)
    item.config._criteria[num] = (label, ok)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not config._criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(config._criteria):
        label, ok = config._criteria[num]
        terminalreporter.write_line(f"criterion {num} {'PASS' if ok else 'FAIL'}: {label}")
