import pytest

from misere.forms import Interner


@pytest.fixture
def it():
    return Interner()


@pytest.fixture(scope="session")
def shared():
    """One warm arena for read-only tests that want small catalogs cached."""
    return Interner()
