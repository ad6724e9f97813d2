import os
import sys

import pytest

# lets test modules import the shared oracles
sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(scope="session")
def acceptance_log(request):
    """List that collects one PASS/FAIL line per acceptance criterion."""
    if not hasattr(request.config, "_acceptance_lines"):
        request.config._acceptance_lines = []
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
