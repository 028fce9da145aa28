"""Closed-form analysis: erasure and mutual-information evolution, bounds, TUBs.

Level 1 is the channel side.  A message bit with 0-based info coordinates
``(c_1, ..., c_m)`` sees the channel erasure probability pushed through the
local transform of position ``c_l`` at each level in turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import erfc, sqrt

import numpy as np

from .code import ProductCode


def _check_prob(x, name):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def _check_pos(n_l, i):
    if n_l < 2:
        raise ValueError(f"local code length must be >= 2, got {n_l}")
    if not 0 <= i <= n_l - 2:
        raise ValueError(f"local info index {i} outside [0, {n_l - 2}]")


def spc_erasure_step(eps: float, n_l: int, i: int) -> float:
    """Erasure probability of local info bit ``i`` (0-based) given correct past bits."""
    _check_prob(eps, "eps")
    _check_pos(n_l, i)
    return eps * (1.0 - (1.0 - eps) ** (n_l - 1 - i))


def spc_mi_step(mi: float, n_l: int, i: int) -> float:
    """Mutual-information form of :func:`spc_erasure_step`."""
    _check_prob(mi, "mutual information")
    _check_pos(n_l, i)
    return 1.0 - (1.0 - mi) * (1.0 - mi ** (n_l - 1 - i))


def worst_bit_recursion(code: ProductCode, eps: float) -> float:
    """Erasure probability of the first decoded bit (the largest of all q_i)."""
    _check_prob(eps, "eps")
    e = eps
    for n_l in code.dims:
        e = e * (1.0 - (1.0 - e) ** (n_l - 1))
    return e


def bit_erasure_profile(code: ProductCode, eps: float) -> np.ndarray:
    """q_1..q_k in message order."""
    _check_prob(eps, "eps")
    q = np.array([eps])
    for n_l in code.dims:
        i = np.arange(n_l - 1)
        q = (q[:, None] * (1.0 - (1.0 - q[:, None]) ** (n_l - 1 - i)[None, :])).ravel()
    return q


@dataclass(frozen=True)
class DeProfile:
    code: ProductCode
    eps: float
    q: np.ndarray

    @property
    def q_max(self) -> float:
        return float(self.q.max())

    @property
    def lower(self) -> float:
        return self.q_max

    @property
    def upper_sum(self) -> float:
        return float(self.q.sum())

    @property
    def upper_loose(self) -> float:
        return self.code.k * self.q_max


def de_profile(code: ProductCode, eps: float) -> DeProfile:
    return DeProfile(code, float(eps), bit_erasure_profile(code, eps))


@dataclass(frozen=True)
class MiProfile:
    """Single-step MI bookkeeping per level, plus the end-to-end per-bit MI.

    ``per_level[l]`` holds ``I^(i)`` for each local info position of a level-l
    local code fed with the channel MI; ``loss[l] = I**n_l`` is what that local
    code fails to pass on; ``final`` is the MI of each message bit after all
    levels (``1 - q_i``).
    """

    mutual_info: float
    dims: tuple
    per_level: tuple
    loss: np.ndarray
    final: np.ndarray

    @property
    def per_level_sum(self) -> np.ndarray:
        return np.array([v.sum() for v in self.per_level])

    @property
    def capacity_gap(self) -> float:
        """Channel MI minus the average MI per codeword bit delivered to the message."""
        return self.mutual_info - self.final.sum() / int(np.prod(self.dims))


def mi_loss(code: ProductCode, mi: float) -> MiProfile:
    _check_prob(mi, "mutual information")
    per_level = tuple(np.array([spc_mi_step(mi, n_l, i) for i in range(n_l - 1)]) for n_l in code.dims)
    loss = np.array([mi**n_l for n_l in code.dims], dtype=np.float64)
    final = 1.0 - bit_erasure_profile(code, 1.0 - mi)
    return MiProfile(float(mi), code.dims, per_level, loss, final)


def mi_evolution(code: ProductCode, mi: float) -> list[np.ndarray]:
    """Tree of MI values per level, starting from the channel MI at the root.

    Entry ``l`` lists the ``prod_{i<=l} (n_i - 1)`` values after ``l`` levels,
    children of one parent stored contiguously.
    """
    _check_prob(mi, "mutual information")
    levels = [np.array([mi])]
    for n_l in code.dims:
        i = np.arange(n_l - 1)
        parent = levels[-1][:, None]
        levels.append((1.0 - (1.0 - parent) * (1.0 - parent ** (n_l - 1 - i)[None, :])).ravel())
    return levels


def tub_bec(code: ProductCode, eps: float) -> float:
    """Truncated union bound ``A_min * eps^d`` on the erasure channel."""
    _check_prob(eps, "eps")
    return code.a_min * eps**code.d


def tub_awgn(code: ProductCode, ebn0_db: float) -> float:
    """Truncated union bound ``A_min/2 * erfc(sqrt(d R Eb/N0))`` for BPSK on AWGN."""
    if not np.isfinite(ebn0_db):
        raise ValueError("Eb/N0 must be finite")
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return 0.5 * code.a_min * erfc(sqrt(code.d * code.rate * ebn0))
