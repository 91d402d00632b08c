import pytest

from freeness_lab import GF, QQ

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--allow-slow", action="store_true", default=False,
                     help="run checks on curves of degree above 30")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs --allow-slow")
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.skipped:
        ACCEPTANCE[number] = ("SKIP", f"{title} ({rep.longrepr[2] if isinstance(rep.longrepr, tuple) else 'skipped'})")
    elif rep.when == "call":
        ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", title)
    elif rep.failed:
        ACCEPTANCE[number] = ("FAIL", title)


def pytest_collection_modifyitems(config, items):
    if config.getoption("--allow-slow"):
        return
    skip = pytest.mark.skip(reason="degree above 30; pass --allow-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")


@pytest.fixture(params=["q", "fp"], ids=["Q", "F32003"])
def field(request):
    return QQ if request.param == "q" else GF(32003)


@pytest.fixture
def fp():
    return GF(32003)
