"""Exact erasure-channel ground truth by exhaustive pattern enumeration.

Every erasure pattern ``E`` of the n codeword positions is decoded once; a
failure is any output bit that differs from the transmitted message, an
erasure included.  Failures are binned by ``|E|`` so that a single sweep
yields the exact block error probability on any grid of ``eps``::

    P(eps) = sum_w fail[w] * eps**w * (1 - eps)**(n - w)
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .code import ProductCode

log = logging.getLogger(__name__)

ERASED = kernels.ERASED
DECODERS = ("sc", "elias", "ml")
MAX_EXACT_N = 16
CHUNK = 1 << 12


class EnumerationLimitError(ValueError):
    """Raised when 2^n enumeration is requested beyond the cap without ``force``."""


class InconsistentReceivedError(ValueError):
    """Unerased bits that no codeword matches; impossible on a true erasure channel."""


@dataclass(frozen=True)
class ExactCurve:
    decoder: str
    epsilon: np.ndarray
    values: np.ndarray


def ml_erasure_decode(code: ProductCode, erased, received):
    """ML decoding on the erasure channel.

    Returns the unique message consistent with the unerased bits, or ``None``
    when several messages are (the ambiguous case).  ``received`` is a
    length-n bit vector whose erased entries are ignored.
    """
    mask = np.asarray(erased, dtype=bool).reshape(1, -1)
    rx = np.asarray(received).reshape(1, -1)
    if mask.shape[1] != code.n or rx.shape[1] != code.n:
        raise ValueError(f"pattern and received word must have length {code.n}")
    rx = np.where(mask, 0, rx).astype(np.uint8)
    out, bad = kernels.ml_erasure(code, mask, rx)
    if bad[0]:
        raise InconsistentReceivedError("unerased bits are not consistent with any codeword")
    if np.any(out[0] == ERASED):
        return None
    return out[0].astype(np.uint8)


def _decode_patterns(code, decoder, erased, codeword, message, genie):
    rx = np.where(erased, np.int8(ERASED), codeword[None, :].astype(np.int8))
    if decoder == "sc":
        return kernels.sc_ternary(code, rx, message if genie else None)
    if genie:
        raise ValueError("genie-aided decoding only applies to the SC decoder")
    if decoder == "elias":
        return kernels.elias_ternary(code, rx)
    if decoder == "ml":
        out, _ = kernels.ml_erasure(code, erased, np.where(erased, 0, codeword[None, :]))
        return out
    raise ValueError(f"decoder must be one of {DECODERS}, got {decoder!r}")


def _check_size(code, force):
    if code.n > MAX_EXACT_N:
        if not force:
            raise EnumerationLimitError(
                f"exact enumeration visits 2^{code.n} patterns; n={code.n} exceeds the cap "
                f"n<={MAX_EXACT_N}. Pass force=True (CLI: --force) or use Monte Carlo simulation instead."
            )
        warnings.warn(f"enumerating 2^{code.n} erasure patterns; this may take very long", RuntimeWarning)


def _chunk_counts(code, decoder, lo, hi, codeword, message, genie):
    ids = np.arange(lo, hi, dtype=np.int64)
    erased = ((ids[:, None] >> np.arange(code.n)) & 1).astype(bool)
    weight = erased.sum(axis=1)
    out = _decode_patterns(code, decoder, erased, codeword, message, genie)
    block_fail = np.any(out != message[None, :], axis=1)
    bit_erased = out == ERASED
    nb = code.n + 1
    block = np.bincount(weight, weights=block_fail, minlength=nb).astype(np.int64)
    per_bit = np.zeros((nb, code.k), dtype=np.int64)
    np.add.at(per_bit, weight, bit_erased.astype(np.int64))
    return block, per_bit


def failure_counts(code: ProductCode, decoder: str, message=None, genie: bool = False,
                   force: bool = False, workers: int = 1):
    """Per-weight failure counts over all ``2^n`` erasure patterns.

    Returns ``(block, per_bit)``: ``block[w]`` counts weight-``w`` patterns
    with a block failure, ``per_bit[w, i]`` those leaving bit ``i`` erased.
    The pattern range is split into fixed chunks; the merged counts do not
    depend on ``workers``.
    """
    if decoder not in DECODERS:
        raise ValueError(f"decoder must be one of {DECODERS}, got {decoder!r}")
    _check_size(code, force)
    msg = np.zeros(code.k, dtype=np.int8) if message is None else np.asarray(message, dtype=np.int8)
    if msg.shape != (code.k,):
        raise ValueError(f"message must have length {code.k}")
    codeword = code.encode(msg).astype(np.int8)
    total = 1 << code.n
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    job = lambda b: _chunk_counts(code, decoder, b[0], b[1], codeword, msg, genie)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, bounds))
    else:
        parts = [job(b) for b in bounds]
    block = sum(p[0] for p in parts)
    per_bit = sum(p[1] for p in parts)
    log.debug("enumerated %d patterns for %s/%s", total, code, decoder)
    return block, per_bit


def weight_polynomial(counts, n: int, epsilon) -> np.ndarray:
    """``sum_w counts[w] eps^w (1-eps)^(n-w)`` for each eps (``counts`` may be 2-D)."""
    eps = np.atleast_1d(np.asarray(epsilon, dtype=np.float64))
    if np.any((eps < 0) | (eps > 1)):
        raise ValueError("erasure probabilities must lie in [0, 1]")
    w = np.arange(n + 1)
    basis = eps[:, None] ** w[None, :] * (1.0 - eps[:, None]) ** (n - w)[None, :]
    return basis @ np.asarray(counts, dtype=np.float64)


def exact_block_error(code: ProductCode, decoder: str, epsilon, message=None,
                      force: bool = False, workers: int = 1) -> ExactCurve:
    """Exact block error probability of ``decoder`` on BEC(eps) for each grid point."""
    block, _ = failure_counts(code, decoder, message=message, force=force, workers=workers)
    eps = np.atleast_1d(np.asarray(epsilon, dtype=np.float64))
    return ExactCurve(decoder, eps, weight_polynomial(block, code.n, eps))


def per_bit_exact_erasure(code: ProductCode, decoder: str, epsilon: float, bit=None,
                          genie: bool = False, force: bool = False):
    """Exact probability that message bit ``bit`` (0-based) is erased.

    With ``genie=True`` the SC decoder is fed the correct past decisions, so
    the result is the conditional erasure probability of that bit.  ``bit=None``
    returns all k probabilities.
    """
    if decoder == "ml":
        raise ValueError("per-bit erasure probabilities are defined for 'sc' and 'elias'")
    _, per_bit = failure_counts(code, decoder, genie=genie, force=force)
    probs = weight_polynomial(per_bit, code.n, [epsilon])[0]
    if bit is None:
        return probs
    if not 0 <= bit < code.k:
        raise IndexError(f"bit index {bit} outside [0, {code.k})")
    return float(probs[bit])


def pattern_outcomes(code: ProductCode, force: bool = False) -> dict[str, np.ndarray]:
    """Success indicator of each decoder for every pattern (index = erased bitmask)."""
    _check_size(code, force)
    ids = np.arange(1 << code.n, dtype=np.int64)
    erased = ((ids[:, None] >> np.arange(code.n)) & 1).astype(bool)
    zero_cw = np.zeros(code.n, dtype=np.int8)
    zero_msg = np.zeros(code.k, dtype=np.int8)
    return {
        dec: ~np.any(_decode_patterns(code, dec, erased, zero_cw, zero_msg, False) != 0, axis=1)
        for dec in DECODERS
    }
