"""Bit arrays with rank support, value-free range minimum queries and a
wavelet matrix for small integer alphabets.

All public positions are 1-based unless a structure is constructed with an
explicit ``lo`` offset.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from . import _kernels as K
from .errors import BuildError, RangeError


class BitArray:
    """Immutable bit array ``b[1..n]`` with constant-time ``rank1``."""

    __slots__ = ("_words", "_sup", "_sub", "length", "_bv")

    def __init__(self, bits: Sequence[int] | np.ndarray):
        words, nbits = K.pack_bits(np.asarray(bits, dtype=np.uint8) != 0)
        self._init(words, nbits)

    def _init(self, words, nbits):
        self._words = words
        self.length = int(nbits)
        self._sup, self._sub = K.build_directory(words)
        self._bv = (self._words, self._sup, self._sub, np.int64(self.length))

    @classmethod
    def from_words(cls, words: np.ndarray, nbits: int) -> "BitArray":
        obj = cls.__new__(cls)
        obj._init(np.ascontiguousarray(words, dtype=np.uint64), nbits)
        return obj

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise RangeError(f"bit position {i} outside [1, {self.length}]")
        return int(K.get_bit(self._words, i - 1))

    def rank1(self, i: int) -> int:
        """Number of set bits among positions 1..i."""
        if not 0 <= i <= self.length:
            raise RangeError(f"rank position {i} outside [0, {self.length}]")
        return int(K.rank1(self._words, self._sup, self._sub, i))

    def select1(self, k: int) -> int:
        """Position (1-based) of the k-th set bit."""
        if not 1 <= k <= self.count():
            raise RangeError(f"select1({k}) with {self.count()} set bits")
        return int(K.select1(self._words, self._sup, self._sub, k)) + 1

    def select0(self, k: int) -> int:
        if not 1 <= k <= self.length - self.count():
            raise RangeError(f"select0({k}) with {self.length - self.count()} zero bits")
        return int(K.select0(self._words, self._sup, self._sub, k)) + 1

    def count(self) -> int:
        return int(self._sup[-1])

    def to_numpy(self) -> np.ndarray:
        return K.unpack_bits(self._words, self.length)

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def kernel_view(self):
        return self._bv

    def size_bits(self) -> int:
        """Payload bits plus the rank directory."""
        return self.length + self.directory_bits()

    def directory_bits(self) -> int:
        return 8 * (self._sup.nbytes + self._sub.nbytes)

    def __repr__(self) -> str:
        return f"BitArray(length={self.length}, ones={self.count()})"


class Rmq:
    """Rightmost-minimum range queries answered without the source values.

    The values are consumed at construction into a 2m-bit parentheses
    sequence plus a block/sparse-table directory over its excess walk.
    ``lo`` is the index of the first value (entries ``lo..lo+m-1``).
    """

    def __init__(self, values: Sequence[int] | np.ndarray, lo: int = 1):
        values = np.asarray(values, dtype=np.int64)
        if values.ndim != 1 or values.shape[0] == 0:
            raise BuildError("range-minimum structure needs at least one value")
        bits = K.stack_bits(values)
        words, nbits = K.pack_bits(bits)
        self._init(words, nbits, values.shape[0], lo)

    def _init(self, words, nbits, count, lo):
        self.lo = int(lo)
        self.length = int(count)
        self._bits = BitArray.from_words(words, nbits)
        self._bmin = K.excess_blocks(self._bits.words, np.int64(nbits))
        self._table = K.sparse_table(self._bmin)
        w, sup, sub, nb = self._bits.kernel_view
        self._bp = (w, sup, sub, nb, self._bmin, self._table)

    @classmethod
    def from_bits(cls, words: np.ndarray, nbits: int, count: int, lo: int) -> "Rmq":
        obj = cls.__new__(cls)
        obj._init(np.ascontiguousarray(words, dtype=np.uint64), int(nbits), count, lo)
        return obj

    @property
    def hi(self) -> int:
        return self.lo + self.length - 1

    def query(self, i: int, j: int) -> int:
        """Largest k in [i, j] attaining the minimum value."""
        if not (self.lo <= i <= j <= self.hi):
            raise RangeError(f"rmq({i}, {j}) outside [{self.lo}, {self.hi}] or empty")
        return int(K.rmq_query(self._bp, i - self.lo, j - self.lo)) + self.lo

    def query_many(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        if i.size and (i.min() < self.lo or j.max() > self.hi or np.any(i > j)):
            raise RangeError("rmq batch contains an empty or out-of-range query")
        return K.rmq_query_batch(self._bp, i - self.lo, j - self.lo) + self.lo

    @property
    def kernel_view(self):
        return self._bp

    @property
    def bits(self) -> BitArray:
        return self._bits

    def size_bits(self) -> int:
        return (
            self._bits.size_bits()
            + 8 * self._bmin.nbytes
            + 8 * self._table.nbytes
        )


class WaveletMatrix:
    """Rank/select/access over a sequence of codes in ``[0, 2**levels)``."""

    def __init__(self, codes: Sequence[int] | np.ndarray, levels: int | None = None):
        codes = np.asarray(codes, dtype=np.int64)
        top = int(codes.max()) if codes.size else 0
        nlev = max(1, top.bit_length()) if levels is None else levels
        rows = []
        zeros = np.zeros(nlev, dtype=np.int64)
        cur = codes
        for lev in range(nlev):
            bit = (cur >> (nlev - 1 - lev)) & 1
            rows.append(bit.astype(np.uint8))
            zeros[lev] = int((bit == 0).sum())
            cur = np.concatenate([cur[bit == 0], cur[bit == 1]])
        words = np.stack([K.pack_bits(r)[0] for r in rows]) if rows else None
        self._init(words, zeros, codes.shape[0])

    def _init(self, words, zeros, length):
        self.length = int(length)
        self.levels = words.shape[0]
        self._words = np.ascontiguousarray(words, dtype=np.uint64)
        dirs = [K.build_directory(self._words[lev]) for lev in range(self.levels)]
        self._sup = np.stack([d[0] for d in dirs])
        self._sub = np.stack([d[1] for d in dirs])
        self._zeros = np.asarray(zeros, dtype=np.int64)
        self._wm = (self._words, self._sup, self._sub, self._zeros)

    @classmethod
    def from_words(cls, words: np.ndarray, zeros: np.ndarray, length: int) -> "WaveletMatrix":
        obj = cls.__new__(cls)
        obj._init(words, zeros, length)
        return obj

    def __len__(self) -> int:
        return self.length

    def access(self, p: int) -> int:
        """Code at 0-based position p."""
        return int(K.wm_access(self._wm, p))

    def rank(self, c: int, p: int) -> int:
        """Occurrences of c among the first p codes."""
        if c >> self.levels:
            return 0
        return int(K.wm_rank(self._wm, c, p))

    def select(self, c: int, k: int) -> int:
        """0-based position of the k-th occurrence of c."""
        if not 1 <= k <= self.rank(c, self.length):
            raise RangeError(f"select({c}, {k}) beyond the occurrences of {c}")
        return int(K.wm_select(self._wm, c, k))

    @property
    def kernel_view(self):
        return self._wm

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def zeros(self) -> np.ndarray:
        return self._zeros

    def size_bits(self) -> int:
        payload = self.levels * self.length
        return payload + 8 * (self._sup.nbytes + self._sub.nbytes + self._zeros.nbytes)
