import pytest

_LOG = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_LOG] = {}


@pytest.fixture
def acceptance_log(request):
    """Mapping criterion number -> (status, title, detail, seconds)."""
    return request.config.stash[_LOG]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(log):
        status, title, detail, seconds = log[num]
        line = f"criterion {num:2d}: {status}  {title} ({seconds:.2f} s)"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
