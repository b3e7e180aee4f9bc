import os

import pytest
from hypothesis import HealthCheck, settings

from godel_duality import make_chain
from godel_duality.constructions import corpus_algebras

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus4():
    return corpus_algebras(4, 6)


@pytest.fixture(scope="session")
def corpus5():
    return corpus_algebras(5, 6)


@pytest.fixture(scope="session")
def small_corpus():
    """Algebras with at most 12 elements from forests of depth at most 2."""
    return corpus_algebras(4, 6, max_elements=12)


@pytest.fixture
def chains():
    return {n: make_chain(n) for n in range(2, 9)}


# one pass/fail line per acceptance criterion, aggregated over its test items
_criteria = {}


def _criterion_of(nodeid):
    if "test_acceptance.py::" not in nodeid:
        return None
    name = nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return None
    return int(name[len("test_criterion_"):].split("_")[0])


def pytest_runtest_logreport(report):
    k = _criterion_of(report.nodeid)
    if k is None:
        return
    if report.when == "call" or report.outcome != "passed":
        entry = _criteria.setdefault(k, [0, 0])
        entry[0 if report.outcome == "passed" else 1] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        ok, bad = _criteria[k]
        status = "PASS" if not bad else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status} ({ok} passed, {bad} failed)")
