_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _MARKERS.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    outcome = "PASS" if report.outcome == "passed" else "FAIL"
    # a criterion spread over several tests fails if any of them fails
    if _CRITERIA.get(number, ("", "PASS"))[1] == "FAIL":
        outcome = "FAIL"
    _CRITERIA[number] = (title, outcome)


_MARKERS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKERS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcome = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {outcome}  {title}")
