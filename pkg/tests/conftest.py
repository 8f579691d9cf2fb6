import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record a one-line verdict that is echoed in the terminal summary."""
    def record(text):
        print(text)
        ACCEPTANCE_LINES.append(text)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
