import pytest

from obrechkoff import make_context


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)


@pytest.fixture(scope="session")
def ctx60():
    return make_context(60)
