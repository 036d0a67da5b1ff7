import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from metanil.catalog import builtin, standard_corpus
from metanil.perm import build_group


@functools.lru_cache(maxsize=None)
def group(name):
    """Build (and share) a builtin or corpus group by name."""
    for entry in _corpus():
        if entry.name == name:
            return build_group(entry.spec)
    return build_group(builtin(name))


@functools.lru_cache(maxsize=None)
def _corpus():
    return tuple(standard_corpus())


def corpus_entries():
    return list(_corpus())


def corpus_names(max_order=None):
    return [e.name for e in _corpus() if max_order is None or e.expected["order"] <= max_order]


@pytest.fixture
def G():
    return group


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed:
        item.rep_call_failed = True


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance")
    for number in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[number])
