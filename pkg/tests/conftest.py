import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shapeforge import ExactCounts


@pytest.fixture(scope="session")
def counts():
    return ExactCounts()
