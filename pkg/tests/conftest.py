import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import config as app_config

# Before any module creates its logger
app_config.LOG_TO_FILE = False


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the large acceptance matrices")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def contracts(monkeypatch):
    monkeypatch.setattr(app_config, "CHECK_CONTRACTS", True)


@pytest.fixture
def rng():
    return random.Random(app_config.DEFAULT_SEED)
