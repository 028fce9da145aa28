"""Dispatch between the numba and NumPy kernel implementations."""

import numpy as np

from . import _jit
from . import _kernels_numpy as _np_k

ERASED = _np_k.ERASED


def _impl():
    if _jit.get_backend() == "numba":
        from . import _kernels_numba

        return _kernels_numba
    return _np_k


def _dims(code):
    return np.asarray(code.dims, dtype=np.int64)


def _genie(code, genie, batch):
    if genie is None:
        return np.zeros((1, code.k), dtype=np.int8), False
    g = np.asarray(genie, dtype=np.int8)
    g = np.broadcast_to(g, (batch, code.k))
    return np.ascontiguousarray(g), True


def sc_llr(code, llr, bec, genie=None):
    """Batch SC decoding of channel LLRs given in codeword order."""
    x = np.ascontiguousarray(llr[:, code.array_order], dtype=np.float64)
    g, use = _genie(code, genie, x.shape[0])
    return _impl().sc_llr_batch(x, _dims(code), bool(bec), g, use)


def sc_ternary(code, rx, genie=None):
    x = np.ascontiguousarray(rx[:, code.array_order], dtype=np.int8)
    g, use = _genie(code, genie, x.shape[0])
    return _impl().sc_ternary_batch(x, _dims(code), g, use)


def elias_llr(code, llr, bec):
    x = np.ascontiguousarray(llr[:, code.array_order], dtype=np.float64)
    return _impl().elias_llr_batch(x, _dims(code), bool(bec))


def elias_ternary(code, rx):
    x = np.ascontiguousarray(rx[:, code.array_order], dtype=np.int8)
    return _impl().elias_ternary_batch(x, _dims(code))


def ml_erasure(code, erased, received):
    gt = np.ascontiguousarray(code.generator_matrix().T)
    erased = np.ascontiguousarray(erased, dtype=np.bool_)
    received = np.ascontiguousarray(received, dtype=np.uint8) & 1
    return _impl().ml_erasure_batch(gt, erased, received)
