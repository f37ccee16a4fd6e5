import pytest

from gendered_terms.genderlex import default_lexicon

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        num, title = marker.args
        _ACCEPTANCE.append((num, title, rep.outcome, getattr(item, "_acceptance_detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, outcome, detail in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {num:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)


@pytest.fixture
def detail(request):
    """Attach a one-line measurement to the acceptance summary."""
    def _set(text):
        request.node._acceptance_detail = text
    return _set


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()
