import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))  # make helpers importable

from helpers import DEMO  # noqa: E402

from cloudmcdm.pipeline import run_pipeline  # noqa: E402


@pytest.fixture(scope="session")
def report_before():
    return run_pipeline(DEMO / "config_before.json")


@pytest.fixture(scope="session")
def report_after():
    return run_pipeline(DEMO / "config_after.json")
