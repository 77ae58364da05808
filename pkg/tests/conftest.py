import time

import pytest

from itermorse import kernels

_START = time.perf_counter()
SUITE_BUDGET_S = 60.0


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    elapsed = time.perf_counter() - _START
    terminalreporter.section("acceptance criteria")
    for line in acceptance.result_lines():
        terminalreporter.write_line(line)
    verdict = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(f"criterion 5 (suite time): {verdict}  whole session {elapsed:.1f} s "
                                f"(budget {SUITE_BUDGET_S:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _START >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
