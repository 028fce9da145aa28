import numpy as np
import pytest

from spcpc import ProductCode, set_backend
from spcpc import kernels
from spcpc._jit import NUMBA_AVAILABLE

pytestmark = pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba not installed")

DIMS = [(3, 3), (4, 3, 2), (2, 2, 2, 2), (5, 4)]


def both(fn):
    prev = set_backend("numpy")
    try:
        a = fn()
        set_backend("numba")
        b = fn()
    finally:
        set_backend(prev)
    return a, b


def moderate_llr(code, rng, size=300):
    return rng.normal(0.5, 2.0, size=(size, code.n))


def mixed_llr(code, rng, size=300):
    # certain, erased and saturating entries mixed into soft ones
    llr = moderate_llr(code, rng, size)
    r = rng.random(llr.shape)
    llr[r < 0.1] = np.inf
    llr[(r >= 0.1) & (r < 0.2)] = -np.inf
    llr[(r >= 0.2) & (r < 0.3)] = 0.0
    llr[(r >= 0.3) & (r < 0.35)] *= 100.0
    return llr


def close(a, b):
    # an ulp of the tanh product moves atanh by about ulp * e^|L| / 2
    tol = 1e-9 * (1.0 + np.abs(a)) + 1e-15 * np.exp(np.minimum(np.abs(a), 700.0))
    return np.all(np.abs(a - b) <= tol)


def same_class(a, b):
    """Identical sign, infinities and exact zeros.

    Magnitudes near saturation are not compared: there one ulp of the
    tanh product is a ln 2 step of the LLR, and the backends multiply in
    different orders.
    """
    return (np.array_equal(np.sign(a), np.sign(b)) and np.array_equal(np.isinf(a), np.isinf(b))
            and not np.isnan(a).any() and not np.isnan(b).any())


@pytest.mark.parametrize("dims", DIMS)
@pytest.mark.parametrize("bec", [False, True])
def test_sc_llr_mixed(dims, bec):
    code = ProductCode(dims)
    llr = mixed_llr(code, np.random.default_rng(sum(dims)))
    (oa, ra), (ob, rb) = both(lambda: kernels.sc_llr(code, llr, bec))
    assert np.array_equal(oa, ob) and same_class(ra, rb)


@pytest.mark.parametrize("dims", DIMS)
def test_sc_llr_moderate(dims):
    code = ProductCode(dims)
    rng = np.random.default_rng(1)
    llr = moderate_llr(code, rng)
    genie = rng.integers(0, 2, size=(llr.shape[0], code.k)).astype(np.int8)
    for g in (None, genie):
        (oa, ra), (ob, rb) = both(lambda: kernels.sc_llr(code, llr, False, g))
        assert np.array_equal(oa, ob)
        assert close(ra, rb)


@pytest.mark.parametrize("dims", DIMS)
def test_elias_llr(dims):
    code = ProductCode(dims)
    rng = np.random.default_rng(3)
    (oa, ra), (ob, rb) = both(lambda: kernels.elias_llr(code, mixed_llr(code, np.random.default_rng(3)), True))
    assert np.array_equal(oa, ob) and same_class(ra, rb)
    llr = moderate_llr(code, rng)
    (oa, ra), (ob, rb) = both(lambda: kernels.elias_llr(code, llr, False))
    assert np.array_equal(oa, ob) and close(ra, rb)


@pytest.mark.parametrize("dims", DIMS)
def test_ternary_and_ml(dims):
    code = ProductCode(dims)
    rng = np.random.default_rng(4)
    cw = code.encode(rng.integers(0, 2, size=(400, code.k)))
    erased = rng.random(cw.shape) < 0.35
    rx = np.where(erased, 2, cw).astype(np.int8)
    for fn in (lambda: kernels.sc_ternary(code, rx), lambda: kernels.elias_ternary(code, rx)):
        a, b = both(fn)
        assert np.array_equal(a, b)
    (oa, ba), (ob, bb) = both(lambda: kernels.ml_erasure(code, erased, np.where(erased, 0, cw).astype(np.uint8)))
    assert np.array_equal(oa, ob) and np.array_equal(ba, bb) and not ba.any()
