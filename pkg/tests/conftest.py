import numpy as np
import pytest

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and rep.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        notes = [f"{k} = {v}" for k, v in item.user_properties]
        _acceptance.append((rep.passed, item.name, doc, notes))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for passed, name, doc, notes in _acceptance:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {doc}")
        for note in notes:
            terminalreporter.write_line(f"       {note}")


@pytest.fixture
def rng():
    return np.random.default_rng(20121015)

