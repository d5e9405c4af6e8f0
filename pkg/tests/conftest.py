from collections import defaultdict

_CRITERIA = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[crit].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (n, text), results in sorted(_CRITERIA.items()):
        ok = all(outcome == "passed" for _, outcome in results)
        failed = [name for name, outcome in results if outcome != "passed"]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        tr.write_line(line)
