"""Reference LCP array of a Wheeler DFA by direct string comparison.

Each entry compares two infinite strings generated by following smallest or
largest predecessors from a state. Finite lcp values of a Wheeler DFA stay
below 3n, so a comparison that survives 3n characters is infinite. This is
the quadratic ground truth the sampled structure is checked against; it
reads only the plain edge arrays, never the succinct navigation index.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import islice

import numpy as np

from . import _kernels as K
from .errors import RangeError
from .wheeler import PlainAdjacency, WheelerDfa


@dataclass(frozen=True)
class LcpArray:
    """Entries ``2..2n``; the value ``infinity`` (= 3n) stands for an infinite lcp."""

    values: np.ndarray
    n: int

    @property
    def infinity(self) -> int:
        return 3 * self.n

    def __getitem__(self, i: int) -> int:
        if not 2 <= i <= 2 * self.n:
            raise RangeError(f"LCP entry {i} outside [2, {2 * self.n}]")
        return int(self.values[i - 2])

    def __len__(self) -> int:
        return self.values.shape[0]

    def is_infinite(self, i: int) -> bool:
        return self[i] >= self.infinity

    def odd_entries(self) -> np.ndarray:
        """Entries 3, 5, ..., 2n-1, i.e. the lcp between adjacent states."""
        return self.values[1::2]

    def render(self, i: int) -> str:
        return "inf" if self.is_infinite(i) else str(self[i])


def _plain(d: WheelerDfa) -> PlainAdjacency:
    if d.plain is None:
        raise ValueError("reference LCP needs the plain edge arrays of the automaton")
    return d.plain


def min_string_stream(d: WheelerDfa, i: int) -> Iterator[str]:
    """Characters of the smallest string read backwards from state i."""
    return _stream(d, i, use_max=False)


def max_string_stream(d: WheelerDfa, i: int) -> Iterator[str]:
    return _stream(d, i, use_max=True)


def _stream(d: WheelerDfa, i: int, use_max: bool) -> Iterator[str]:
    if not 1 <= i <= d.n:
        raise RangeError(f"state {i} outside [1, {d.n}]")
    p = _plain(d)
    step = p.pmax if use_max else p.pmin
    x = i - 1
    while True:
        yield d.symbols[p.lam[x]]
        x = int(step[x])


def lcp_pair(a: Iterator[str], b: Iterator[str], cap: int) -> int:
    """Common-prefix length of two streams; ``cap`` when they agree that long."""
    length = 0
    for x, y in islice(zip(a, b), cap):
        if x != y:
            return length
        length += 1
    return cap


def build_full_lcp(d: WheelerDfa) -> LcpArray:
    p = _plain(d)
    values = K.full_lcp(p.lam, p.pmin, p.pmax, np.int64(3 * d.n))
    return LcpArray(np.asarray(values, dtype=np.int64), d.n)


def verify_min_max_chain(d: WheelerDfa) -> bool:
    """True iff min_1 <= max_1 <= min_2 <= ... <= max_n on 3n-character prefixes."""
    cap = 3 * d.n
    strings = []
    for i in range(1, d.n + 1):
        strings.append(_codes(d, i, False, cap))
        strings.append(_codes(d, i, True, cap))
    return all(a <= b for a, b in zip(strings, strings[1:]))


def _codes(d: WheelerDfa, i: int, use_max: bool, cap: int) -> tuple[int, ...]:
    p = _plain(d)
    step = p.pmax if use_max else p.pmin
    out = []
    x = i - 1
    for _ in range(cap):
        out.append(int(p.lam[x]))
        x = int(step[x])
    return tuple(out)
