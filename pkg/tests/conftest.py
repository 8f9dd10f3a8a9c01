import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cbfree import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # One-time JIT warmup so timing-sensitive tests measure the
    # algorithms, not compilation.
    kernels.warmup()
