import pytest

from zipchow.chowpipeline import build_coinvariant_model
from zipchow.presets import build_preset


@pytest.fixture(scope="session")
def preset():
    """Memoized preset builder shared by the whole run."""
    cache = {}

    def get(name, *params):
        key = (name, params)
        if key not in cache:
            cache[key] = build_preset(name, params)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def model(preset):
    """Memoized coinvariant models; building one is the expensive step."""
    cache = {}

    def get(name, params, p0):
        key = (name, tuple(params), p0)
        if key not in cache:
            cache[key] = build_coinvariant_model(preset(name, *params), p0)
        return cache[key]

    return get
