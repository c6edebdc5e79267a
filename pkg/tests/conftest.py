import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.setenv("ODRCOUNT_CACHE", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_report(request):
    lines = request.config.stash[ACCEPTANCE_LINES]

    def report(res):
        lines.append(res.line())
        print(res.line())
        assert res.passed, res.failures
        assert res.within_budget, f"{res.seconds:.1f}s exceeds {res.limit:.0f}s"
    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE_LINES]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
