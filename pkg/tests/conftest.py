from __future__ import annotations

import pytest

from uttree.fixtures import fixture_corpus, fixture_json


@pytest.fixture(scope="session")
def table1():
    return fixture_corpus("table1")


@pytest.fixture(scope="session")
def table2():
    return fixture_corpus("table2_clt")


@pytest.fixture(scope="session")
def table1_json():
    return fixture_json("table1")


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if "test_acceptance" not in report.nodeid or report.when != "call":
        return
    name = report.nodeid.split("::", 1)[1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\nACCEPTANCE {outcome}: {name}", flush=True)
