# criterion id -> [(test name, passed)], and id -> description
_outcomes = {}
_descriptions = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(id, description): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _outcomes.setdefault(mark.args[0], [])
            if len(mark.args) > 1:
                _descriptions[mark.args[0]] = mark.args[1]


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _outcomes.setdefault(mark.args[0], []).append(
            (item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_outcomes):
        results = _outcomes[cid]
        ok = bool(results) and all(passed for _, passed in results)
        status = "PASS" if ok else ("FAIL" if results else "NOT RUN")
        failed = [name for name, passed in results if not passed]
        line = f"{cid} {status:7s} {_descriptions.get(cid, '')}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        tr.write_line(line)

