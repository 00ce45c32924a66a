import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from girthcs import BUILTIN_NAMES, builtin  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(params=BUILTIN_NAMES)
def builtin_name(request):
    return request.param


@pytest.fixture
def euclid():
    return builtin("euclid_plane")
