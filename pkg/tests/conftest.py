import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dcoset.catalog import load_fixture  # noqa: E402
from dcoset.presentation import group_system, initial_system  # noqa: E402
from dcoset.rewriting import knuth_bendix  # noqa: E402


@pytest.fixture(scope="session")
def free_pres():
    return load_fixture("free_a6_a4")


@pytest.fixture(scope="session")
def free_rs(free_pres):
    return knuth_bendix(initial_system(free_pres), logged=True)


@pytest.fixture(scope="session")
def trefoil_pres():
    return load_fixture("trefoil")


@pytest.fixture(scope="session")
def trefoil_rs(trefoil_pres):
    return knuth_bendix(group_system(trefoil_pres), logged=True)


@pytest.fixture(scope="session")
def trefoil_dc_pres():
    return load_fixture("trefoil_dc")


@pytest.fixture(scope="session")
def trefoil_dc_rs(trefoil_dc_pres):
    return knuth_bendix(initial_system(trefoil_dc_pres), 10, logged=True)


@pytest.fixture(scope="session")
def s3_pres():
    return load_fixture("s3")


@pytest.fixture(scope="session")
def s3_rs(s3_pres):
    return knuth_bendix(initial_system(s3_pres), logged=True)


def w(text):
    """Word literal helper: juxtaposed single-character symbols."""
    from dcoset.words import parse_word
    return parse_word(text)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
