import numpy as np
import pytest

from almostnorlund import _kernels
from almostnorlund._kernels import _fallback

try:
    from almostnorlund._kernels import _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = [_fallback] + ([_compiled] if _compiled is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_report_header(config):
    return f"almostnorlund kernel backend: {_kernels.BACKEND}"
