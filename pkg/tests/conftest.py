import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is None:
        return
    if rep.when == "setup" and rep.failed:
        _RESULTS[label] = ("FAIL", 0.0)
    elif rep.when == "call":
        _RESULTS[label] = ("PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS):
        status, dur = _RESULTS[label]
        terminalreporter.write_line(f"{label}: {status} ({dur:.2f}s)")


def criterion(label):
    def mark(fn):
        fn.criterion = label
        return fn
    return mark
