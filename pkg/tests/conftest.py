import pytest

from spcpc import _jit
from spcpc.code import ProductCode

BACKENDS = ["numpy"] + (["numba"] if _jit.NUMBA_AVAILABLE else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = _jit.set_backend(request.param)
    yield request.param
    _jit.set_backend(previous)


@pytest.fixture
def c33():
    return ProductCode((3, 3))
