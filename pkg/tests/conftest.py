import numpy as np
import pytest

from bolmag import fixtures
from bolmag.search import SearchSpec, enumerate_structures

ACCEPTANCE = {}


def bol_corpus(order, iso=True):
    return enumerate_structures(SearchSpec("bol-magma", order, iso_reduce=iso)).certificates


def bol_loops(order):
    return enumerate_structures(SearchSpec("bol-loop", order, iso_reduce=True)).certificates


@pytest.fixture(scope="session")
def corpus_upto5():
    """Bol magmas with neutral, orders 1..5, one per isomorphism class."""
    return [t for n in range(1, 6) for t in bol_corpus(n)]


@pytest.fixture(scope="session")
def corpus_order6():
    return bol_corpus(6)


@pytest.fixture(scope="session")
def loops_upto8():
    return {n: bol_loops(n) for n in range(1, 9)}


@pytest.fixture(scope="session")
def groups():
    return fixtures.small_groups()


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_criterion_" in report.nodeid:
        ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        verdict = "PASS" if ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
