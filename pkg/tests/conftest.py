import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# acceptance lines collected by test_acceptance.py, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def eg_convention() -> dict:
    return json.loads((FIXTURES / "eg_convention.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
