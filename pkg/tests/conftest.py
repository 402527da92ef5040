import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

from latticegames import catalog  # noqa: E402


@pytest.fixture(scope="session")
def b2():
    return catalog.powerset(2)


@pytest.fixture(scope="session")
def b3():
    return catalog.powerset(3)


@pytest.fixture(scope="session")
def m3():
    return catalog.m3()


@pytest.fixture(scope="session")
def n5():
    return catalog.n5()


@pytest.fixture(scope="session")
def chain3():
    return catalog.chain(3)


def labels(L, elems):
    return [L.label(e) for e in elems]
