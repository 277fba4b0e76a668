import pytest

from fareyzeta.arith import cached_sieve
from fareyzeta.zeta import ZetaEvaluator


@pytest.fixture(scope="session")
def small_tables():
    return cached_sieve(20_000)


@pytest.fixture(scope="session")
def ev():
    return ZetaEvaluator()


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
