"""LCP access from a sparse sample of entries.

Every non-zero LCP entry equals one plus the value of another entry, found
with one range-minimum query over predecessor boundaries. Following those
parent links gives a graph in which every node has at most one parent. We
store the value of every node picked by a chain-disjoint sampling with rate
``h``; any entry then reaches a sampled, parentless or repeated ancestor in
at most ``2h - 2`` parent steps, and only ``|V| / h`` values are kept.

Two layouts share the machinery: ``"full"`` covers entries ``2..2n`` of the
LCP array of a Wheeler DFA; ``"bar"`` covers only the adjacent-state
entries, indexed ``2..n``, as used for de Bruijn graphs.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import BuildError, ParameterError, RangeError
from .lcp_oracle import LcpArray
from .succinct import BitArray, Rmq
from .wheeler import WheelerDfa

_MODES = {"full": 0, "bar": 1}


@dataclass(frozen=True)
class RGraph:
    """Parent links over entries ``lo..lo+len(parent)-1``; -1 marks no parent."""

    parent: np.ndarray
    lo: int = 2

    @property
    def hi(self) -> int:
        return self.lo + self.parent.shape[0] - 1

    def __len__(self) -> int:
        return self.parent.shape[0]

    def __getitem__(self, i: int) -> int | None:
        p = int(self.parent[i - self.lo])
        return None if p < 0 else p + self.lo

    def nodes(self) -> range:
        return range(self.lo, self.hi + 1)

    def ancestors(self, i: int, steps: int) -> list[int]:
        out = [i]
        for _ in range(steps):
            nxt = self[out[-1]]
            if nxt is None:
                break
            out.append(nxt)
        return out


def linear_h(n: int) -> int:
    """Sampling rate for the O(n)-bit variant."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def loglog_h(n: int, sigma: int) -> int:
    """Sampling rate for the O(n log log sigma)-bit variant."""
    if n <= 1:
        return 1
    denom = math.log2(math.log2(sigma)) if sigma > 2 else 0.0
    return max(1, math.ceil(math.log2(n) / max(1.0, denom)))


def resolve_h(h: int | str | None, n: int, sigma: int) -> int:
    if h is None or h == "auto-linear":
        return linear_h(n)
    if h == "auto-loglog":
        return loglog_h(n, sigma)
    try:
        value = int(h)
    except (TypeError, ValueError):
        raise ParameterError(f"unknown sampling rate {h!r}") from None
    if value < 1:
        raise ParameterError(f"sampling rate must be >= 1, got {value}")
    return value


def build_sampling(rg: RGraph, h: int) -> set[int]:
    """Chain-disjoint sampling: each picked entry v has h distinct, unmarked
    ancestors v(0..h-1); v(h-1) is sampled and the chain is marked. Candidates
    are considered in increasing entry order."""
    if h < 1:
        raise ParameterError(f"sampling rate must be >= 1, got {h}")
    chosen, _ = K.sample_chains(rg.parent, np.int64(h))
    return {int(x) + rg.lo for x in np.flatnonzero(chosen)}


def picked_chains(rg: RGraph, h: int) -> dict[int, list[int]]:
    """The marked chain of every picked entry, keyed by the picked entry."""
    _, picked = K.sample_chains(rg.parent, np.int64(h))
    return {int(v) + rg.lo: rg.ancestors(int(v) + rg.lo, h - 1) for v in np.flatnonzero(picked)}


def uncovered_entry(rg: RGraph, entries: Iterable[int], h: int) -> int | None:
    """An entry without a stopping ancestor within 2h-2 steps, if any."""
    chosen = np.zeros(len(rg), dtype=np.bool_)
    for i in entries:
        chosen[i - rg.lo] = True
    v = K.first_uncovered(rg.parent, chosen, np.int64(h))
    return None if v < 0 else int(v) + rg.lo


def _star_dtype(infinity: int):
    for dt in (np.uint8, np.uint16, np.uint32):
        if infinity <= np.iinfo(dt).max:
            return dt
    return np.uint64


class SampledLcp:
    """Sample bitvector, sampled values and an RMQ over the whole array."""

    def __init__(
        self,
        dfa: WheelerDfa,
        h: int,
        sampled: BitArray,
        lcp_star: np.ndarray,
        rmq: Rmq,
        infinity: int,
        mode: str = "full",
    ):
        if mode not in _MODES:
            raise ParameterError(f"unknown layout {mode!r}")
        self.dfa = dfa
        self.h = h
        self.sampled = sampled
        self.lcp_star = lcp_star
        self.rmq = rmq
        self.infinity = int(infinity)
        self.mode = mode
        self._smp = (
            sampled.kernel_view,
            lcp_star,
            rmq.kernel_view,
            np.int64(_MODES[mode]),
            np.int64(self.infinity),
        )

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        dfa: WheelerDfa,
        full: LcpArray | np.ndarray,
        h: int | str | None = None,
        *,
        mode: str = "full",
        entries: Iterable[int] | None = None,
        values: Iterable[int] | None = None,
        infinity: int | None = None,
    ) -> "SampledLcp":
        """Sample ``full`` (entries from index 2) and discard it.

        With ``entries`` the sampling is taken as given instead of computed;
        it must satisfy the size and coverage guarantees for ``h``, and
        ``values`` (if given) must match ``full`` at those entries.
        """
        arr = np.asarray(full.values if isinstance(full, LcpArray) else full, dtype=np.int64)
        expected = 2 * dfa.n - 1 if mode == "full" else dfa.n - 1
        if arr.shape[0] != expected:
            raise BuildError(f"{mode} layout expects {expected} values, got {arr.shape[0]}")
        if infinity is None:
            infinity = 3 * dfa.n
        h = resolve_h(h, dfa.n, dfa.sigma)
        h = max(1, min(h, max(1, expected)))

        if expected == 0:
            rmq = None
            rg = RGraph(np.zeros(0, dtype=np.int64))
        else:
            rmq = Rmq(arr, lo=2)
            rg = cls._rgraph(dfa, rmq, mode, expected)

        if entries is None:
            picked = build_sampling(rg, h)
        else:
            picked = {int(i) for i in entries}
            bad = [i for i in picked if not 2 <= i <= expected + 1]
            if bad:
                raise BuildError(f"sampled entries {sorted(bad)} outside [2, {expected + 1}]")
            if len(picked) * h > expected:
                raise BuildError(f"{len(picked)} samples exceed {expected}/{h}")
            hole = uncovered_entry(rg, picked, h)
            if hole is not None:
                raise BuildError(f"entry {hole} reaches no sampled ancestor within {2 * h - 2} steps")

        order = sorted(picked)
        star = arr[np.asarray(order, dtype=np.int64) - 2] if order else np.zeros(0, dtype=np.int64)
        if values is not None:
            given = np.asarray(list(values), dtype=np.int64)
            if given.shape != star.shape or np.any(given != star):
                raise BuildError("supplied sample values disagree with the LCP array")
        bits = np.zeros(expected, dtype=np.uint8)
        bits[np.asarray(order, dtype=np.int64) - 2] = 1
        star = star.astype(_star_dtype(infinity))
        if rmq is None:
            rmq = _EmptyRmq()
        return cls(dfa, h, BitArray(bits), star, rmq, infinity, mode)

    @staticmethod
    def _rgraph(dfa: WheelerDfa, rmq: Rmq, mode: str, count: int) -> RGraph:
        parents = K.lcp_parents(dfa.nav, rmq.kernel_view, np.int64(_MODES[mode]), np.int64(count))
        return RGraph(np.asarray(parents, dtype=np.int64))

    # -- queries ----------------------------------------------------------

    @property
    def lo(self) -> int:
        return 2

    @property
    def hi(self) -> int:
        return 2 * self.dfa.n if self.mode == "full" else self.dfa.n

    def __len__(self) -> int:
        return self.hi - 1

    def _check(self, i: int) -> None:
        if not self.lo <= i <= self.hi:
            raise RangeError(f"entry {i} outside [{self.lo}, {self.hi}]")

    def access(self, i: int) -> int:
        self._check(i)
        return int(K.lcp_access(self.dfa.nav, self._smp, i)[0])

    def access_with_calls(self, i: int) -> tuple[int, int]:
        """Value of entry i and the number of recursive lookups it took."""
        self._check(i)
        v, calls = K.lcp_access(self.dfa.nav, self._smp, i)
        return int(v), int(calls)

    def access_all(self) -> tuple[np.ndarray, np.ndarray]:
        entries = np.arange(self.lo, self.hi + 1, dtype=np.int64)
        if entries.size == 0:
            return entries, entries
        return K.lcp_access_batch(self.dfa.nav, self._smp, entries)

    def r_map(self, i: int) -> int | None:
        self._check(i)
        p = K.lcp_parent(self.dfa.nav, self.rmq.kernel_view, self._smp[3], i)
        return None if p < 0 else int(p)

    def r_detail(self, i: int) -> tuple[int, int, int] | None:
        """The range bounds (k, k') used for entry i together with R(i).

        Full layout: k, k' are the predecessor states bracketing the range
        (``p_max(t-1), p_min(t)`` for odd entries, ``p_min(t), p_max(t)``
        for even ones). Bar layout: k, k' delimit the RMQ range directly.
        """
        j = self.r_map(i)
        if j is None:
            return None
        d = self.dfa
        if self.mode == "bar":
            return d.pred_max(i - 1) + 1, d.pred_min(i), j
        if i & 1:
            t = (i + 1) // 2
            return d.pred_max(t - 1), d.pred_min(t), j
        t = i // 2
        return d.pred_min(t), d.pred_max(t), j

    def rgraph(self) -> RGraph:
        if len(self) == 0:
            return RGraph(np.zeros(0, dtype=np.int64))
        return self._rgraph(self.dfa, self.rmq, self.mode, len(self))

    def sampled_entries(self) -> list[int]:
        return [int(x) + 2 for x in np.flatnonzero(self.sampled.to_numpy())]

    def popcount(self) -> int:
        return self.sampled.count()

    @property
    def word_width(self) -> int:
        return 8 * self.lcp_star.dtype.itemsize

    def is_infinite(self, value: int) -> bool:
        return value >= self.infinity

    def render(self, value: int) -> str:
        return "inf" if self.is_infinite(value) else str(value)

    def size_report(self) -> dict[str, int]:
        return {
            "sample_bits": self.sampled.length,
            "sample_rank": self.sampled.directory_bits(),
            "samples": 8 * self.lcp_star.nbytes,
            "rmq": self.rmq.size_bits(),
        }

    def aux_bits(self) -> int:
        return sum(self.size_report().values())

    def __repr__(self) -> str:
        return f"SampledLcp(mode={self.mode!r}, h={self.h}, samples={self.popcount()})"


class PlainLcp:
    """Baseline: every value stored in a plain array, plus the same RMQ."""

    h = 0

    def __init__(self, dfa: WheelerDfa, values: np.ndarray, infinity: int, mode: str = "full"):
        if mode not in _MODES:
            raise ParameterError(f"unknown layout {mode!r}")
        self.dfa = dfa
        self.values = np.asarray(values, dtype=_star_dtype(infinity))
        self.infinity = int(infinity)
        self.mode = mode
        self.rmq = Rmq(self.values, lo=2) if self.values.shape[0] else _EmptyRmq()

    @property
    def lo(self) -> int:
        return 2

    @property
    def hi(self) -> int:
        return self.values.shape[0] + 1

    def __len__(self) -> int:
        return self.values.shape[0]

    def access(self, i: int) -> int:
        if not self.lo <= i <= self.hi:
            raise RangeError(f"entry {i} outside [{self.lo}, {self.hi}]")
        return int(self.values[i - 2])

    def access_with_calls(self, i: int) -> tuple[int, int]:
        return self.access(i), 1

    def access_all(self) -> tuple[np.ndarray, np.ndarray]:
        return self.values.astype(np.int64), np.ones(self.values.shape[0], dtype=np.int64)

    def popcount(self) -> int:
        return 0

    @property
    def word_width(self) -> int:
        return 8 * self.values.dtype.itemsize

    def is_infinite(self, value: int) -> bool:
        return value >= self.infinity

    def render(self, value: int) -> str:
        return "inf" if self.is_infinite(value) else str(value)

    def size_report(self) -> dict[str, int]:
        return {"values": 8 * self.values.nbytes, "rmq": self.rmq.size_bits()}

    def aux_bits(self) -> int:
        return sum(self.size_report().values())

    def __repr__(self) -> str:
        return f"PlainLcp(mode={self.mode!r}, entries={len(self)})"


class _EmptyRmq:
    """Stand-in for layouts with no entries (single-state inputs)."""

    kernel_view = (
        np.zeros(1, dtype=np.uint64),
        np.zeros(2, dtype=np.uint32),
        np.zeros(1, dtype=np.uint16),
        np.int64(0),
        np.zeros(0, dtype=np.int32),
        np.zeros((1, 0), dtype=np.int32),
    )
    length = 0
    lo = 2

    def query(self, i, j):
        raise RangeError("no entries to query")

    def size_bits(self) -> int:
        return 0


def r_map(d: WheelerDfa, rmq: Rmq, i: int) -> int | None:
    """Parent entry of LCP entry i (full layout), or None when its value is 0."""
    if not 2 <= i <= 2 * d.n:
        raise RangeError(f"entry {i} outside [2, {2 * d.n}]")
    p = K.lcp_parent(d.nav, rmq.kernel_view, np.int64(0), i)
    return None if p < 0 else int(p)


def build_sampled_lcp(d: WheelerDfa, full: LcpArray, h: int | str | None = None) -> SampledLcp:
    return SampledLcp.build(d, full, h)


def access(s: SampledLcp, i: int) -> int:
    return s.access(i)
