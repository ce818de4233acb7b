import pytest

from src.harness import fixtures
from src.utils.config import Settings


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def embedded(settings):
    """Factory: a PlanarDynamicGraph holding a named fixture's starting embedding."""

    def make(name: str):
        return fixtures.embedded(name, settings)

    return make


@pytest.fixture
def embedding():
    return fixtures.embedding


@pytest.fixture
def graph_edges():
    return fixtures.build
