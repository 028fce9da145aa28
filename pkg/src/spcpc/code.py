"""Single parity-check product codes: parameters, index maps and encoders.

A codeword is an ``n_1 x ... x n_m`` binary array in which every line along
every axis has even parity.  Two serializations are used throughout:

* codeword index: coordinate ``c_1`` varies fastest (Fortran order), so the
  level-1 local code ``j`` covers positions ``(j-1)*n_1 + 1 .. j*n_1``;
* message index: info coordinates in lexicographic order with ``c_m``
  fastest and ``c_1`` slowest, which is the successive-cancellation
  decoding order.

Every local code carries its parity bit at the last local position.
All indices in the Python API are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb, prod
from typing import Sequence

import numpy as np

MAX_BRUTEFORCE_K = 20


@dataclass(frozen=True)
class ProductCode:
    """An m-dimensional SPC product code with component lengths ``n_1..n_m``."""

    component_lengths: tuple[int, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        dims = tuple(int(x) for x in self.component_lengths)
        if len(dims) < 1:
            raise ValueError("a product code needs at least one component code")
        if any(x < 2 for x in dims):
            raise ValueError(f"every component length must be >= 2, got {dims}")
        object.__setattr__(self, "component_lengths", dims)

    @classmethod
    def parse(cls, text: str) -> "ProductCode":
        """Build from a comma-separated string such as ``"5,5,5"``."""
        try:
            dims = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
        except ValueError:
            raise ValueError(f"malformed spec {text!r}; expected e.g. '3,3'") from None
        return cls(dims)

    def __str__(self):
        return f"({self.n},{self.k}) SPC product code {self.component_lengths}"

    @property
    def dims(self) -> tuple[int, ...]:
        return self.component_lengths

    @property
    def info_dims(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.dims)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return prod(self.dims)

    @property
    def k(self) -> int:
        return prod(self.info_dims)

    @property
    def d(self) -> int:
        return 2**self.m

    @property
    def a_min(self) -> int:
        return prod(comb(x, 2) for x in self.dims)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def eta(self) -> tuple[int, ...]:
        """Number of local SPC codes at each level."""
        out = []
        for lvl in range(self.m):
            out.append(prod(self.info_dims[:lvl]) * prod(self.dims[lvl + 1 :]))
        return tuple(out)

    # ---- index maps -------------------------------------------------------

    def codeword_index(self, coords: Sequence[int]) -> int:
        """Codeword position of a 0-based coordinate tuple."""
        self._check_coords(coords, self.dims)
        idx, stride = 0, 1
        for c, nl in zip(coords, self.dims):
            idx += c * stride
            stride *= nl
        return idx

    def codeword_coords(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.n:
            raise IndexError(f"codeword index {index} outside [0, {self.n})")
        out = []
        for nl in self.dims:
            index, c = divmod(index, nl)
            out.append(c)
        return tuple(out)

    def message_index(self, coords: Sequence[int]) -> int:
        """Message position of a 0-based info coordinate tuple."""
        self._check_coords(coords, self.info_dims)
        idx = 0
        for c, kl in zip(coords, self.info_dims):
            idx = idx * kl + c
        return idx

    def message_coords(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.k:
            raise IndexError(f"message index {index} outside [0, {self.k})")
        out = []
        for kl in reversed(self.info_dims):
            index, c = divmod(index, kl)
            out.append(c)
        return tuple(reversed(out))

    def is_info(self, coords: Sequence[int]) -> bool:
        self._check_coords(coords, self.dims)
        return all(c < nl - 1 for c, nl in zip(coords, self.dims))

    @staticmethod
    def _check_coords(coords, bounds):
        if len(coords) != len(bounds):
            raise IndexError(f"expected {len(bounds)} coordinates, got {len(coords)}")
        for c, b in zip(coords, bounds):
            if not 0 <= c < b:
                raise IndexError(f"coordinate {tuple(coords)} out of range {tuple(bounds)}")

    @property
    def info_positions(self) -> np.ndarray:
        """Codeword positions of the message bits, in message order."""
        key = "info_positions"
        if key not in self._cache:
            pos = [self.codeword_index(self.message_coords(t)) for t in range(self.k)]
            self._cache[key] = np.asarray(pos, dtype=np.int64)
        return self._cache[key]

    @property
    def array_order(self) -> np.ndarray:
        """Permutation taking a codeword vector to the C-ordered array layout.

        ``x[..., code.array_order]`` lays bits out with ``c_1`` slowest, which
        is what the decoding kernels consume.
        """
        key = "array_order"
        if key not in self._cache:
            self._cache[key] = np.arange(self.n).reshape(self.dims, order="F").ravel()
        return self._cache[key]

    # ---- encoding ---------------------------------------------------------

    def encode(self, msg) -> np.ndarray:
        """Encode one message (length k) or a batch of shape ``(B, k)``."""
        u = np.asarray(msg)
        if u.shape[-1:] != (self.k,):
            raise ValueError(f"message length must be {self.k}, got shape {u.shape}")
        u = (u.astype(np.uint8) & 1)
        batch = u.shape[:-1]
        arr = u.reshape(batch + self.info_dims)
        nb = len(batch)
        for axis in range(self.m - 1, -1, -1):
            arr = _append_parity(arr, nb + axis)
        # codeword serialization: c_1 fastest
        arr = np.moveaxis(arr, tuple(range(nb, nb + self.m)), tuple(range(nb + self.m - 1, nb - 1, -1)))
        return np.ascontiguousarray(arr).reshape(batch + (self.n,))

    def encode_in_order(self, msg, order: Sequence[int]) -> np.ndarray:
        """Encode applying the axis parities in a caller-chosen order (testing aid)."""
        u = np.asarray(msg, dtype=np.uint8) & 1
        if u.shape != (self.k,):
            raise ValueError(f"message length must be {self.k}")
        if sorted(order) != list(range(self.m)):
            raise ValueError("order must be a permutation of the axes")
        arr = u.reshape(self.info_dims)
        for axis in order:
            arr = _append_parity(arr, axis)
        return arr.ravel(order="F")

    def generator_matrix(self) -> np.ndarray:
        """Systematic ``k x n`` generator: ``(msg @ G) % 2 == encode(msg)``.

        Built as the Kronecker product of the ``[I | 1]`` component generators;
        rows already follow message order, columns are permuted to codeword
        order.
        """
        key = "generator"
        if key not in self._cache:
            g = np.ones((1, 1), dtype=np.uint8)
            for nl in self.dims:
                gl = np.concatenate([np.eye(nl - 1, dtype=np.uint8), np.ones((nl - 1, 1), dtype=np.uint8)], axis=1)
                g = np.kron(g, gl)
            # kron column index has c_m fastest; codeword index has c_1 fastest
            kron_col = np.arange(self.n).reshape(self.dims).ravel(order="F")
            self._cache[key] = np.ascontiguousarray(g[:, kron_col])
        return self._cache[key]

    def parity_violations(self, codeword) -> int:
        """Number of local SPC constraints (over all levels) that fail."""
        x = np.asarray(codeword, dtype=np.uint8)
        if x.shape != (self.n,):
            raise ValueError(f"codeword length must be {self.n}")
        arr = x.reshape(self.dims, order="F")
        bad = 0
        for lvl in range(self.m):
            # only the lines belonging to local codes: earlier axes restricted to info coords
            sub = arr[tuple(slice(0, nl - 1) for nl in self.dims[:lvl])]
            bad += int(np.count_nonzero(sub.sum(axis=lvl) % 2))
        return bad

    def is_codeword(self, codeword) -> bool:
        x = np.asarray(codeword, dtype=np.uint8).reshape(self.dims, order="F")
        return all(not np.any(x.sum(axis=a) % 2) for a in range(self.m))

    def min_distance_bruteforce(self) -> tuple[int, int]:
        """Minimum nonzero weight and its multiplicity, by enumerating 2^k codewords."""
        if self.k > MAX_BRUTEFORCE_K:
            raise ValueError(
                f"brute-force distance needs 2^k codewords; k={self.k} exceeds the limit k<={MAX_BRUTEFORCE_K}"
            )
        g = self.generator_matrix().astype(np.int64)
        best, count = self.n + 1, 0
        chunk = 1 << 14
        for start in range(1, 1 << self.k, chunk):
            ids = np.arange(start, min(start + chunk, 1 << self.k), dtype=np.int64)
            msgs = (ids[:, None] >> np.arange(self.k)) & 1
            w = ((msgs @ g) % 2).sum(axis=1)
            wmin = int(w.min())
            if wmin < best:
                best, count = wmin, int(np.count_nonzero(w == wmin))
            elif wmin == best:
                count += int(np.count_nonzero(w == wmin))
        return best, count


def _append_parity(arr: np.ndarray, axis: int) -> np.ndarray:
    par = np.bitwise_xor.reduce(arr, axis=axis, keepdims=True)
    return np.concatenate([arr, par], axis=axis)
