import pytest

from afcore import catalog
from afcore.graphs import Graph


@pytest.fixture(scope="session")
def penrose() -> Graph:
    return catalog.build("penrose")


@pytest.fixture(scope="session")
def sigma2() -> Graph:
    return catalog.build("sigma", n=2)


@pytest.fixture(scope="session")
def sigma3() -> Graph:
    return catalog.build("sigma", n=3)


@pytest.fixture(scope="session")
def tadpole() -> Graph:
    return catalog.build("tadpole")


@pytest.fixture(scope="session")
def universe_sample() -> list:
    """Every 97th graph of the exhaustive small-graph universe (204 graphs).

    Unit tests cross-check against oracles on this sample; the acceptance
    suite sweeps the full universe.
    """
    return [g for i, g in enumerate(catalog.small_graph_universe()) if i % 97 == 0]
