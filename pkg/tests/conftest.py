# tests/conftest.py
import logging
import os
import random

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Run the full acceptance ranges (marked slow).",
    )


@pytest.fixture(scope="session")
def runslow(request):
    # Also respect environment variable QCONG_RUNSLOW=1
    env_flag = os.environ.get("QCONG_RUNSLOW", "")
    cmd_flag = request.config.getoption("--runslow")
    return cmd_flag or env_flag in {"1", "true", "True"}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("QCONG_RUNSLOW", "") in {"1", "true", "True"}:
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def env_log(tmp_path, monkeypatch):
    # Centralize logging env so tests don't write to project root
    monkeypatch.setenv("LOG_LEVEL", "1")
    monkeypatch.setenv("LOG_FILE", str(tmp_path / "qcong.log"))
    yield tmp_path / "qcong.log"


@pytest.fixture
def rng():
    return random.Random(30861)


@pytest.fixture
def random_poly(rng):
    def make(max_degree=12, lo=-9, hi=9):
        return [rng.randint(lo, hi) for _ in range(rng.randint(0, max_degree) + 1)]
    return make


@pytest.fixture(autouse=True)
def restore_logging():
    """setup_logger() with LOG_LEVEL=0 disables logging process-wide; undo it after each test."""
    yield
    logging.disable(logging.NOTSET)
