import os
import shutil
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("SPINRING_CLI") or shutil.which("spinring")
    if not path:
        pytest.skip("spinring executable not found; set SPINRING_CLI")
    return path


@pytest.fixture(scope="session")
def schema_dir():
    return REPO / "schemas"
