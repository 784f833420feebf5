import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1]))

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep a developer's GAUSSCHAN.INI and environment out of the tests."""
    monkeypatch.setenv("GAUSSCHAN_INI_PATH", str(tmp_path / "GAUSSCHAN.INI"))
    for name in ("GAUSSCHAN_TOL", "GAUSSCHAN_WORKERS", "GAUSSCHAN_LOG_FILE", "GAUSSCHAN_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
