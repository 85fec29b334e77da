"""Matching statistics of a pattern against a Wheeler DFA.

The index keeps the interval of states into which the current matched
suffix can be read. A failed extension shrinks the suffix to the depth at
which a neighbouring state joins the interval and widens the interval with
binary search over the sampled LCP array, one RMQ and one access per probe.

Symbols outside the alphabet, and the reserved initial symbol, match
nothing; they contribute 0 and reset the state.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .errors import RangeError
from .lcp_sampled import SampledLcp
from .wheeler import WheelerDfa


def _plain_by_code(d: WheelerDfa) -> list[tuple[np.ndarray, np.ndarray]]:
    p = d.plain
    if p is None:
        raise ValueError("oracle needs the plain edge arrays of the automaton")
    codes = p.lam[p.dst]
    return [(p.src[codes == c], p.dst[codes == c]) for c in range(len(d.symbols))]


def ms_oracle(d: WheelerDfa, pattern: str) -> list[int]:
    """Matching statistics by set propagation over the plain edges.

    ``S`` is the set of states reachable by reading ``pattern[j..i]`` from
    any state; when it empties, ``j`` advances and ``S`` is recomputed.
    """
    by_code = _plain_by_code(d)
    codes = [d.code(ch) for ch in pattern]
    everything = np.ones(d.n, dtype=np.bool_)

    def step(cur: np.ndarray, c: int) -> np.ndarray:
        nxt = np.zeros(d.n, dtype=np.bool_)
        if c <= 0:
            return nxt
        src, dst = by_code[c]
        nxt[dst[cur[src]]] = True
        return nxt

    out = []
    j = 0
    cur = everything
    for i, c in enumerate(codes):
        cur = step(cur, c)
        while not cur.any() and j < i:
            j += 1
            cur = everything
            for q in range(j, i + 1):
                cur = step(cur, codes[q])
                if not cur.any():
                    break
        if not cur.any():
            j = i + 1
            cur = everything
        out.append(i + 1 - j)
    return out


def _window_min(s: SampledLcp, lo: int, hi: int) -> int:
    """Minimum LCP value over entries [lo, hi]: one RMQ plus one access."""
    q = int(K.rmq_query(s.rmq.kernel_view, lo - 2, hi - 2)) + 2
    return s.access(q)


def expand_to_depth(
    s: SampledLcp,
    d: WheelerDfa,
    l: int,
    r: int,
    t: int,
    *,
    left: bool = True,
    right: bool = True,
) -> tuple[int, int]:
    """Widest [l', r'] around [l, r] whose spanning LCP entries are all >= t.

    ``left`` / ``right`` switch either side off (it then stays put).
    """
    n = d.n
    if not 1 <= l <= r <= n:
        raise RangeError(f"interval [{l}, {r}] outside [1, {n}]")
    if t < 1:
        return 1, n
    r2 = r
    if right:
        # largest r' with min LCP[2r+1 .. 2r'-1] >= t
        lo, hi = r, n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _window_min(s, 2 * r + 1, 2 * mid - 1) >= t:
                lo = mid
            else:
                hi = mid - 1
        r2 = lo
    l2 = l
    if left:
        # smallest l' with min LCP[2l'+1 .. 2l-1] >= t
        lo, hi = 1, l
        while lo < hi:
            mid = (lo + hi) // 2
            if _window_min(s, 2 * mid + 1, 2 * l - 1) >= t:
                hi = mid
            else:
                lo = mid + 1
        l2 = lo
    return l2, r2


class _Matcher:
    """Interval [l, r] of the matched suffix a (length ell) plus the depths
    y = lcp(a^R, min_l) and x = lcp(a^R, max_r).

    The boundary entries alone do not say how deep a neighbour agrees with
    a^R: max_r may extend a different string than a^R. With y and x the join
    depth of u_{r+1} is min(x, LCP[2r+1]) and that of u_{l-1} is
    min(y, LCP[2l-1]).
    """

    def __init__(self, s: SampledLcp, d: WheelerDfa):
        self.s = s
        self.d = d
        self.reset()

    def reset(self) -> None:
        self.l, self.r, self.ell, self.y, self.x = 1, self.d.n, 0, 0, 0

    def extend(self, c: int) -> bool:
        d, s = self.d, self.s
        a, b = K.forward(d.nav, self.l - 1, self.r - 1, c)
        if a < 0:
            return False
        l2, r2 = int(a) + 1, int(b) + 1
        p = int(K.pred_max(d.nav, r2 - 1)) + 1
        if p < self.r:
            x = self.ell
        elif p == self.r:
            x = self.x
        else:
            x = min(self.x, _window_min(s, 2 * self.r + 1, 2 * p))
        q = int(K.pred_min(d.nav, l2 - 1)) + 1
        if q > self.l:
            y = self.ell
        elif q == self.l:
            y = self.y
        else:
            y = min(self.y, _window_min(s, 2 * q, 2 * self.l - 1))
        self.l, self.r = l2, r2
        self.ell += 1
        self.x = min(x + 1, self.ell)
        self.y = min(y + 1, self.ell)
        return True

    def shrink(self) -> bool:
        """Drop to the longest shorter suffix whose interval is wider.
        False when only the empty suffix remains."""
        d, s = self.d, self.s
        l, r, n = self.l, self.r, d.n
        left = min(self.y, s.access(2 * l - 1)) if l > 1 else 0
        right = min(self.x, s.access(2 * r + 1)) if r < n else 0
        t = min(max(left, right), self.ell - 1)
        if t <= 0:
            self.reset()
            return False
        l2, r2 = expand_to_depth(s, d, l, r, t, left=self.y >= t, right=self.x >= t)
        x = min(self.x, t)
        if r2 > r:
            x = min(x, _window_min(s, 2 * r + 1, 2 * r2))
        y = min(self.y, t)
        if l2 < l:
            y = min(y, _window_min(s, 2 * l2, 2 * l - 1))
        self.l, self.r, self.ell, self.x, self.y = l2, r2, t, x, y
        return True


def matching_statistics(s: SampledLcp, d: WheelerDfa, pattern: str) -> list[int]:
    m = _Matcher(s, d)
    out = []
    for ch in pattern:
        c = d.code(ch)
        if c <= 0:
            m.reset()
            out.append(0)
            continue
        while not m.extend(c):
            if not m.shrink():
                # empty suffix: [1, n] extends by every symbol of the alphabet
                m.extend(c)
                break
        out.append(m.ell)
    return out
