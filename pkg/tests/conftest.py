import pytest

_RESULTS: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(ident, title): acceptance criterion covered by a test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when not in ("setup", "call"):
        return
    ident, title = marker.args
    entry = _RESULTS.setdefault(ident, [title, True, []])
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry[1] = False
        entry[2].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ident in sorted(_RESULTS, key=lambda s: int(s[2:])):
        title, ok, failed = _RESULTS[ident]
        line = f"{ident} {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        terminalreporter.write_line(line)
