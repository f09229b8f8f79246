"""Shared fixtures: expensive search runs are computed once per session."""

import pytest

from invperm import search


@pytest.fixture(scope="session")
def full3_report():
    return search.full_search(3)


@pytest.fixture(scope="session")
def full4_report():
    return search.full_search(4)


@pytest.fixture(scope="session")
def identity3_report():
    return search.identity_L1_search(3)


@pytest.fixture(scope="session")
def identity4_report():
    return search.identity_L1_search(4)


@pytest.fixture(scope="session")
def identity5_report():
    return search.identity_L1_search(5)


@pytest.fixture(scope="session")
def identity6_report():
    return search.identity_L1_search(6)


@pytest.fixture(scope="session")
def normalized5_report():
    return search.normalized_search(5)


@pytest.fixture(scope="session")
def normalized6_report():
    return search.normalized_search(6)
