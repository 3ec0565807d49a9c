import pytest
from hypothesis import settings

from orbiteq.catalog import systems
from orbiteq.shift import TruncatedPoint

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def S():
    return systems()


def word(sft, text):
    return sft.parse_word(text)


def pt(sft, prefix, period=""):
    """``prefix . period^inf``; an empty period gives a finite truncation."""
    return TruncatedPoint(word(sft, prefix), word(sft, period))


# acceptance criteria: one pass/fail line each in the terminal summary

_criteria: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    item.config._criterion_titles = getattr(item.config, "_criterion_titles", {})
    item.config._criterion_titles[n] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(n, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    titles = getattr(config, "_criterion_titles", {})
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        res = _criteria[n]
        verdict = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {titles.get(n, '')} ({sum(res)}/{len(res)} tests)")
