def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo one line per acceptance criterion after the run."""
    try:
        from test_acceptance import ACCEPT_LINES
    except ImportError:
        return
    if not ACCEPT_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPT_LINES:
        terminalreporter.write_line(line)
