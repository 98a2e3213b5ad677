import pytest

from fabdecide.catalog import seed_catalog, seed_rates_bytes
from fabdecide.money import load_rates


@pytest.fixture(scope="session")
def catalog():
    return seed_catalog()


@pytest.fixture(scope="session")
def rates():
    return load_rates(seed_rates_bytes())


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("FABDECIDE_CATALOG", raising=False)
    monkeypatch.delenv("FABDECIDE_RATES", raising=False)
    monkeypatch.delenv("FABDECIDE_UI", raising=False)
