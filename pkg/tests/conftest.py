import sys

import pytest

from dirtymac.coset_code import golay_code, hamming_code


@pytest.fixture(scope="session")
def hamming():
    return hamming_code()


@pytest.fixture(scope="session")
def golay():
    return golay_code()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
