"""Elias' one-sweep decoder: level 1 to level m, extrinsic-only, no feedback."""

from __future__ import annotations

import numpy as np

from . import kernels
from ._kernels_numpy import boxplus, llr_add
from .code import ProductCode
from .sc import CHANNELS, ERASED, _as_batch


def elias_local_output(rho, i: int) -> float:
    """Output for local info bit ``i``: ``rho[i]`` plus the extrinsic of all others."""
    rho = np.asarray(rho, dtype=np.float64)
    if not 0 <= i <= rho.size - 2:
        raise IndexError(f"local info index {i} outside [0, {rho.size - 2}]")
    return float(llr_add(rho[i], boxplus(np.delete(rho, i), axis=0)))


def elias_decode(code: ProductCode, llr, channel: str = "awgn", return_roots: bool = False):
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}")
    x, single = _as_batch(llr, code.n, np.float64)
    bits, roots = kernels.elias_llr(code, x, channel == "bec")
    if single:
        bits, roots = bits[0], roots[0]
    return (bits, roots) if return_roots else bits


def elias_decode_ternary(code: ProductCode, received) -> np.ndarray:
    x, single = _as_batch(received, code.n, np.int8)
    out = kernels.elias_ternary(code, x)
    return out[0] if single else out


def elias_decode_erasure(code: ProductCode, erased, codeword=None) -> np.ndarray:
    mask, single = _as_batch(erased, code.n, np.bool_)
    cw = np.zeros(code.n, dtype=np.int8) if codeword is None else np.asarray(codeword, dtype=np.int8)
    out = kernels.elias_ternary(code, np.where(mask, np.int8(ERASED), cw).astype(np.int8))
    return out[0] if single else out
