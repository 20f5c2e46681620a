from __future__ import annotations

from pathlib import Path

import pytest

_acceptance: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if Path(str(item.fspath)).name != "test_acceptance.py":
        return
    label = getattr(item.function, "criterion", item.name)
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance.append((label, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _acceptance:
        terminalreporter.write_line(f"{verdict}  {label}")
