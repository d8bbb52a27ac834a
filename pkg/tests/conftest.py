import pytest

from bringcurve.pipeline import Engine


@pytest.fixture(scope="session")
def engine():
    """One shared pipeline for the whole suite; stages are cached lazily."""
    return Engine()
