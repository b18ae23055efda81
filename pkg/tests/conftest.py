# tests/conftest.py
from fractions import Fraction

import pytest

from smcmartin.chain.presets import eg1, eg2, eg3, eg4, eg5, harmonic_test_chain
from smcmartin.martin.engine import MartinEngine
from smcmartin.settings import get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees settings built from its own environment."""
    for key in ("SMC_LOG_LEVEL", "SMC_SERIES_CAP", "SMC_STREAM_SCAN_LIMIT", "SMC_HARMONIC_K"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def m1():
    return eg1()


@pytest.fixture
def m2():
    return eg2()


@pytest.fixture(scope="session")
def m3():
    return eg3()


@pytest.fixture
def m4():
    return eg4(Fraction(1, 2))


@pytest.fixture
def m5():
    return eg5()


@pytest.fixture
def mh():
    return harmonic_test_chain()


@pytest.fixture(scope="session")
def engine3(m3):
    return MartinEngine(m3)
