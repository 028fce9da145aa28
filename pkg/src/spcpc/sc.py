"""Successive-cancellation decoding of SPC product codes.

Two domains share one schedule.  The LLR domain works on real channel LLRs
(``+inf`` certain 0, ``-inf`` certain 1, ``0`` erased) and decides with the
tie-to-zero rule, or with the erasure-preserving rule when ``channel="bec"``.
The ternary domain works directly on ``{0, 1, ERASED}`` symbols and is exact
on the erasure channel.

Decisions are returned in message order as ``int8`` with ``ERASED == 2``.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from ._kernels_numpy import boxplus, llr_add
from .code import ProductCode

ERASED = kernels.ERASED
CHANNELS = ("awgn", "bec")


def local_spc_output(rho, lam, i: int) -> float:
    """Soft output for local info bit ``i`` (0-based) of one SPC local code.

    ``rho`` holds the ``n_l`` soft inputs, ``lam`` the ``i`` hard decisions
    already made on the preceding local info bits (``ERASED`` allowed).
    Any erased decision makes the output the bare channel term ``rho[i]``.
    """
    rho = np.asarray(rho, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.int64).reshape(-1)
    if not 0 <= i <= rho.size - 2:
        raise IndexError(f"local info index {i} outside [0, {rho.size - 2}]")
    if lam.size != i:
        raise ValueError(f"expected {i} past decisions, got {lam.size}")
    if np.any(lam == ERASED):
        return float(rho[i])
    ext = float(boxplus(rho[i + 1 :], axis=0))
    if lam.sum() % 2:
        ext = -ext
    return float(llr_add(rho[i], ext))


def _as_batch(x, n, dtype):
    arr = np.asarray(x, dtype=dtype)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ValueError(f"expected length-{n} input(s), got shape {np.shape(x)}")
    return arr, single


def sc_decode(code: ProductCode, llr, channel: str = "awgn", return_roots: bool = False, genie=None):
    """SC-decode channel LLRs (codeword order), one word or a ``(B, n)`` batch.

    ``genie`` optionally supplies the true message(s); past decisions fed back
    into the local decoders are then taken from it instead of the decoder.
    """
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}")
    x, single = _as_batch(llr, code.n, np.float64)
    bits, roots = kernels.sc_llr(code, x, channel == "bec", genie)
    if single:
        bits, roots = bits[0], roots[0]
    return (bits, roots) if return_roots else bits


def sc_decode_ternary(code: ProductCode, received, genie=None) -> np.ndarray:
    """SC-decode ternary channel outputs ``{0, 1, ERASED}`` exactly."""
    x, single = _as_batch(received, code.n, np.int8)
    out = kernels.sc_ternary(code, x, genie)
    return out[0] if single else out


def sc_decode_erasure(code: ProductCode, erased, codeword=None, genie=None) -> np.ndarray:
    """SC-decode ``codeword`` (all-zero by default) with positions ``erased`` wiped.

    ``erased`` is a boolean mask of length n (or a batch of masks).
    """
    mask, single = _as_batch(erased, code.n, np.bool_)
    cw = np.zeros(code.n, dtype=np.int8) if codeword is None else np.asarray(codeword, dtype=np.int8)
    rx = np.where(mask, np.int8(ERASED), cw).astype(np.int8)
    out = kernels.sc_ternary(code, rx, genie)
    return out[0] if single else out


def parse_ternary(text: str) -> np.ndarray:
    """``"e01"`` or ``"e,0,1"`` -> ``[ERASED, 0, 1]``."""
    table = {"0": 0, "1": 1, "e": ERASED, "E": ERASED}
    toks = [t for t in text.replace(",", " ").replace(" ", "")]
    try:
        return np.array([table[t] for t in toks], dtype=np.int8)
    except KeyError as exc:
        raise ValueError(f"ternary symbols must be 0, 1 or e; got {exc.args[0]!r}") from None


def format_ternary(bits) -> str:
    return "".join("e" if b == ERASED else str(int(b)) for b in np.asarray(bits).ravel())


def ternary_to_llr(received) -> np.ndarray:
    rx = np.asarray(received)
    return np.where(rx == ERASED, 0.0, np.where(rx == 1, -np.inf, np.inf))
