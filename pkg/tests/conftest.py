import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
    n_pass = sum(" PASS " in l for l in _ACCEPTANCE_LINES)
    terminalreporter.write_line(f"{n_pass}/{len(_ACCEPTANCE_LINES)} criteria passed")
