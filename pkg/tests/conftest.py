from __future__ import annotations

import pytest

from schemebounds import (
    complete_graph,
    cyclic_group_table,
    cyclotomic,
    from_group,
    hamming,
    johnson,
    symmetric_group_table,
)

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, title = marker
    status = "PASS" if report.outcome == "passed" else "FAIL"
    prev = _criteria.get(number)
    if prev is None or prev[1] == "PASS":
        _criteria[number] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep._criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


@pytest.fixture(scope="session")
def c31_5():
    return cyclotomic(31, 5)


@pytest.fixture(scope="session")
def c31_3():
    return cyclotomic(31, 3)


@pytest.fixture(scope="session")
def j52():
    return johnson(5, 2)


@pytest.fixture(scope="session")
def h32():
    return hamming(3, 2)


@pytest.fixture(scope="session")
def z5():
    return from_group(cyclic_group_table(5), name="Z5")


@pytest.fixture(scope="session")
def s3():
    return from_group(symmetric_group_table(3), name="S3")


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)

