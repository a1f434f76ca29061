"""Shared fixtures: built-in instances are built once per test session."""

import pytest

from skewgroup import fixtures


@pytest.fixture(scope="session")
def inst():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = fixtures.fixture(name)
        return cache[name]

    return get
