"""Channel models and a seeded Monte Carlo engine for BLER/BER curves.

Randomness is counter-based: trial batch ``b`` of grid point ``p`` draws from
``Philox(SeedSequence(seed, spawn_key=(p, b)))``.  Batches have a fixed size,
so a point's results depend on ``(seed, grid, stop rule, batch_size)`` only,
never on how many workers ran the batches.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import kernels
from .code import ProductCode

log = logging.getLogger(__name__)

DECODERS = ("sc", "elias", "ml")
DEFAULT_MAX_TRIALS = 10_000_000
DEFAULT_TARGET_ERRORS = 100
DEFAULT_BATCH = 2000


@dataclass(frozen=True)
class ChannelParam:
    """One operating point: ``kind="bec"`` with erasure probability, or
    ``kind="awgn"`` with Eb/N0 in dB and the code rate for the noise level."""

    kind: str
    value: float
    rate: float = 1.0

    def __post_init__(self):
        if self.kind == "bec":
            if not 0.0 <= self.value <= 1.0:
                raise ValueError(f"erasure probability must lie in [0, 1], got {self.value}")
        elif self.kind == "awgn":
            if not np.isfinite(self.value):
                raise ValueError("Eb/N0 must be finite")
            if not 0.0 < self.rate <= 1.0:
                raise ValueError(f"code rate must lie in (0, 1], got {self.rate}")
        else:
            raise ValueError(f"channel kind must be 'bec' or 'awgn', got {self.kind!r}")

    @classmethod
    def bec(cls, eps: float) -> "ChannelParam":
        return cls("bec", float(eps))

    @classmethod
    def awgn(cls, ebn0_db: float, rate: float) -> "ChannelParam":
        return cls("awgn", float(ebn0_db), float(rate))

    @property
    def noise_var(self) -> float:
        """sigma^2 = 1 / (2 R Eb/N0) for unit-energy antipodal symbols."""
        if self.kind != "awgn":
            raise AttributeError("noise variance is defined for the AWGN channel only")
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.value / 10.0))


@dataclass(frozen=True)
class SimPoint:
    param: ChannelParam
    decoder: str
    trials: int
    block_errors: int
    bit_errors: int
    seed: int
    bits_per_trial: int

    @property
    def bler(self) -> float:
        return self.block_errors / self.trials if self.trials else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.bits_per_trial) if self.trials else 0.0

    @property
    def stderr(self) -> float:
        p = self.bler
        return sqrt(p * (1.0 - p) / self.trials) if self.trials else 0.0


def channel_transmit(param: ChannelParam, codeword, rng: np.random.Generator) -> np.ndarray:
    """Channel LLRs for one codeword or a ``(B, n)`` batch."""
    x = np.asarray(codeword, dtype=np.uint8)
    if param.kind == "bec":
        llr = np.where(x == 1, -np.inf, np.inf)
        llr[rng.random(x.shape) < param.value] = 0.0
        return llr
    var = param.noise_var
    y = (1.0 - 2.0 * x) + rng.normal(0.0, sqrt(var), size=x.shape)
    return 2.0 * y / var


def _decode(code, decoder, llr, bec):
    if decoder == "sc":
        return kernels.sc_llr(code, llr, bec)[0]
    if decoder == "elias":
        return kernels.elias_llr(code, llr, bec)[0]
    erased = llr == 0.0
    received = (llr < 0).astype(np.uint8)
    return kernels.ml_erasure(code, erased, received)[0]


def _batch_rng(seed, point, batch):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(point, batch))))


def _run_batch(code, decoder, param, seed, point, batch, full, size, all_zero):
    # draw the full batch so trial t sees the same noise whatever max_trials is
    rng = _batch_rng(seed, point, batch)
    if all_zero:
        msgs = np.zeros((full, code.k), dtype=np.int8)
    else:
        msgs = rng.integers(0, 2, size=(full, code.k), dtype=np.int8)
    llr = channel_transmit(param, code.encode(msgs), rng)[:size]
    msgs = msgs[:size]
    out = _decode(code, decoder, llr, param.kind == "bec")
    wrong = out != msgs
    return wrong.any(axis=1), wrong.sum(axis=1)


def simulate_point(code: ProductCode, decoder: str, param: ChannelParam, *, seed: int, point: int = 0,
                   max_trials: int = DEFAULT_MAX_TRIALS, target_errors: int = DEFAULT_TARGET_ERRORS,
                   batch_size: int = DEFAULT_BATCH, workers: int = 1, all_zero: bool = False) -> SimPoint:
    """Simulate one grid point until ``target_errors`` block errors or ``max_trials``.

    The run stops at the exact trial on which the error target is met, so the
    reported counts are reproducible trial for trial.
    """
    if decoder not in DECODERS:
        raise ValueError(f"decoder must be one of {DECODERS}, got {decoder!r}")
    if decoder == "ml" and param.kind != "bec":
        raise ValueError("the ML decoder is only available on the erasure channel")
    if max_trials < 1 or target_errors < 1 or batch_size < 1:
        raise ValueError("max_trials, target_errors and batch_size must be positive")
    trials = blk = bits = 0
    batch = 0
    n_batches = -(-max_trials // batch_size)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while batch < n_batches and blk < target_errors:
            wave = range(batch, min(batch + max(workers, 1), n_batches))
            sizes = [min(batch_size, max_trials - b * batch_size) for b in wave]
            jobs = [(code, decoder, param, seed, point, b, batch_size, s, all_zero) for b, s in zip(wave, sizes)]
            results = list(pool.map(lambda a: _run_batch(*a), jobs)) if pool else [_run_batch(*a) for a in jobs]
            for block_fail, bit_err in results:
                cum = np.cumsum(block_fail)
                if blk + (cum[-1] if cum.size else 0) >= target_errors:
                    stop = int(np.searchsorted(cum, target_errors - blk)) + 1
                    trials += stop
                    blk += int(cum[stop - 1])
                    bits += int(bit_err[:stop].sum())
                    break
                trials += block_fail.size
                blk += int(cum[-1])
                bits += int(bit_err.sum())
            batch = wave.stop
    finally:
        if pool:
            pool.shutdown()
    log.debug("%s %s %s: %d/%d block errors", code, decoder, param, blk, trials)
    return SimPoint(param, decoder, trials, blk, bits, seed, code.k)


def run_curve(code: ProductCode, decoder: str, params, *, seed: int,
              max_trials: int = DEFAULT_MAX_TRIALS, target_errors: int = DEFAULT_TARGET_ERRORS,
              batch_size: int = DEFAULT_BATCH, workers: int = 1, all_zero: bool = False) -> list[SimPoint]:
    """Simulate every :class:`ChannelParam` in ``params`` (grid index = stream key)."""
    return [
        simulate_point(code, decoder, p, seed=seed, point=i, max_trials=max_trials,
                       target_errors=target_errors, batch_size=batch_size, workers=workers,
                       all_zero=all_zero)
        for i, p in enumerate(params)
    ]
