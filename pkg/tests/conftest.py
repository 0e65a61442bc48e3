from fractions import Fraction

import pytest

from envelope import FiniteBasePrior

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion for the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        num, title = marker.args
        _ACCEPTANCE[num] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[num]
        terminalreporter.write_line(f"AC{num} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def coin_prior():
    """Base amount 1 or 2 with equal odds."""
    return FiniteBasePrior.from_mapping({1: Fraction(1, 2), 2: Fraction(1, 2)})


@pytest.fixture
def write_json(tmp_path):
    import json

    def write(obj, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write
