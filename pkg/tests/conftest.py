import pytest

from finite2cat.corpus import default_corpus

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[n] = (rep.outcome == "passed", text, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text, dt = _criteria[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}  ({dt:.1f}s)")


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()
