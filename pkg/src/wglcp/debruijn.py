"""k-th order de Bruijn graphs as Wheeler DFAs, with variable-order
navigation driven by the odd-entry LCP array (``lcp_bar``).

Nodes are the distinct k-mers plus '$'-padded prefixes of source nodes,
sorted colexicographically with ``'$' < A < C < G < T``. ``$^k`` is the
initial state; its self-loop carries the '$' label. ``lcp_bar[i]`` is the
longest common suffix of nodes ``i-1`` and ``i``; it is either sampled
(``mode="sampled"``, ``h = ceil(log2 k)``) or kept as a plain array
(``mode="baseline"``). Both modes keep an RMQ over it.

A :class:`VoNode` is a maximal interval of order-k nodes sharing their last
``order`` characters; it stands for one node of the order-``order`` graph.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import BuildError, InputError, OrderError, RangeError
from .lcp_sampled import PlainLcp, SampledLcp
from .wheeler import WheelerDfa, validate

DNA = "ACGT"
PAD = "$"


@dataclass(frozen=True)
class VoNode:
    a: int
    b: int
    order: int

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]@{self.order}"

    def __len__(self) -> int:
        return self.b - self.a + 1


def dbg_h(k: int) -> int:
    return max(1, math.ceil(math.log2(k))) if k > 1 else 1


def _colex(s: str) -> str:
    return s[::-1]


def dbg_nodes(strings: Iterable[str], k: int) -> list[str]:
    """Colex-sorted node strings: k-mers, paddings and the root."""
    if k < 1:
        raise BuildError(f"order k must be >= 1, got {k}")
    kmers: set[str] = set()
    for w in strings:
        bad = set(w) - set(DNA)
        if bad:
            raise InputError(f"characters {sorted(bad)} outside {DNA}")
        for p in range(len(w) - k + 1):
            kmers.add(w[p:p + k])
    if not kmers:
        raise BuildError(f"no {k}-mers in the input")
    succ = _successors(kmers, k)
    has_in = {b for outs in succ.values() for b in outs}
    nodes = set(kmers)
    nodes.add(PAD * k)
    for a in sorted(kmers - has_in, key=_colex):
        nodes.update(_padding(a, k))

    # cycles without a source: pad the colex-smallest unreachable node
    reached = _reach(nodes, k, {PAD * k})
    while len(reached) < len(nodes):
        a = min(nodes - reached, key=_colex)
        fresh = set(_padding(a, k)) - nodes
        nodes.update(fresh)
        reached = _reach(nodes, k, reached | fresh, start=fresh | {a})
    return sorted(nodes, key=_colex)


def _padding(a: str, k: int) -> list[str]:
    return [PAD * i + a[: k - i] for i in range(1, k + 1)]


def _successors(nodes: set[str], k: int) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for a in nodes:
        tail = a[1:]
        out[a] = [tail + c for c in DNA if tail + c in nodes]
    return out


def _reach(nodes: set[str], k: int, seen: set[str], start: set[str] | None = None) -> set[str]:
    seen = set(seen)
    queue = deque(seen if start is None else start)
    seen.update(queue)
    while queue:
        a = queue.popleft()
        tail = a[1:]
        for c in DNA:
            b = tail + c
            if b in nodes and b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def dbg_edges(nodes: list[str]) -> list[tuple[int, int, str]]:
    """1-based edges among sorted nodes; '$' only on the root self-loop."""
    index = {s: i + 1 for i, s in enumerate(nodes)}
    edges = []
    for i, a in enumerate(nodes, start=1):
        tail = a[1:]
        for c in DNA:
            j = index.get(tail + c)
            if j is not None:
                edges.append((i, j, c))
    return edges


def lcs(a: str, b: str) -> int:
    n = 0
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            break
        n += 1
    return n


def lcp_bar_direct(nodes: list[str]) -> np.ndarray:
    """Entries 2..n by direct suffix comparison of adjacent nodes."""
    return np.array([lcs(nodes[i - 1], nodes[i]) for i in range(1, len(nodes))], dtype=np.int64)


class DeBruijnIndex:
    def __init__(self, k: int, dfa: WheelerDfa, lcp: SampledLcp | PlainLcp):
        self.k = k
        self.dfa = dfa
        self.lcp = lcp
        self.rmq = lcp.rmq

    @property
    def mode(self) -> str:
        return "sampled" if isinstance(self.lcp, SampledLcp) else "baseline"

    @property
    def n(self) -> int:
        return self.dfa.n

    @property
    def h(self) -> int:
        return self.lcp.h

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        strings: Iterable[str],
        k: int,
        mode: str = "sampled",
        *,
        h: int | None = None,
        entries: Iterable[int] | None = None,
        values: Iterable[int] | None = None,
    ) -> "DeBruijnIndex":
        if mode not in ("sampled", "baseline"):
            raise BuildError(f"unknown mode {mode!r}")
        nodes = dbg_nodes(strings, k)
        dfa = validate(len(nodes), dbg_edges(nodes), initial_symbol=PAD)
        bar = lcp_bar_direct(nodes)
        if mode == "baseline":
            return cls(k, dfa, PlainLcp(dfa, bar, k, mode="bar"))
        s = SampledLcp.build(
            dfa, bar, dbg_h(k) if h is None else h, mode="bar",
            entries=entries, values=values, infinity=k,
        )
        return cls(k, dfa, s)

    # -- node strings -------------------------------------------------------

    def kmer(self, i: int) -> str:
        """Node string, read backwards along smallest predecessors."""
        d = self.dfa
        d._check(i)
        out = []
        x = i - 1
        for _ in range(self.k):
            out.append(d.symbols[int(K.label_code(d.nav, x))])
            x = int(K.pred_min(d.nav, x))
        return "".join(reversed(out))

    def nodes(self) -> list[str]:
        return [self.kmer(i) for i in range(1, self.n + 1)]

    # -- lcp_bar ------------------------------------------------------------

    def _check_entry(self, i: int) -> None:
        if not 2 <= i <= self.n:
            raise RangeError(f"entry {i} outside [2, {self.n}]")

    def lcp_bar(self, i: int) -> int:
        self._check_entry(i)
        return self.lcp.access(i)

    def lcp_bar_with_hops(self, i: int) -> tuple[int, int]:
        self._check_entry(i)
        return self.lcp.access_with_calls(i)

    def lcp_bar_all(self) -> np.ndarray:
        return self.lcp.access_all()[0]

    def r_detail(self, i: int) -> tuple[int, int, int] | None:
        """(k, k', R(i)) of the odd-entry R-map; needs sampled mode."""
        if not isinstance(self.lcp, SampledLcp):
            raise BuildError("R-map is only materialised in sampled mode")
        return self.lcp.r_detail(i)

    def _window_min(self, lo: int, hi: int) -> int:
        return self.lcp_bar(self.rmq.query(lo, hi))

    # -- navigation ---------------------------------------------------------

    def root(self) -> VoNode:
        return VoNode(1, self.n, 0)

    def _maximal(self, a: int, b: int, order: int) -> VoNode:
        if order == 0:
            return VoNode(1, self.n, 0)
        n = self.n
        lo, hi = b, n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._window_min(b + 1, mid) >= order:
                lo = mid
            else:
                hi = mid - 1
        b2 = lo
        lo, hi = 1, a
        while lo < hi:
            mid = (lo + hi) // 2
            if self._window_min(mid + 1, a) >= order:
                hi = mid
            else:
                lo = mid + 1
        return VoNode(lo, b2, order)

    def _check_node(self, v: VoNode) -> None:
        if not 1 <= v.a <= v.b <= self.n:
            raise RangeError(f"interval [{v.a}, {v.b}] outside [1, {self.n}]")
        if not 0 <= v.order <= self.k:
            raise OrderError(f"order {v.order} outside [0, {self.k}]")

    def shorter(self, v: VoNode, order: int) -> VoNode:
        self._check_node(v)
        if order > v.order:
            raise OrderError(f"cannot shorten order {v.order} to {order}")
        if order < 0:
            raise OrderError(f"negative order {order}")
        if order == v.order:
            return v
        return self._maximal(v.a, v.b, order)

    def longer(self, v: VoNode, order: int) -> list[VoNode]:
        self._check_node(v)
        if order < v.order:
            raise OrderError(f"cannot lengthen order {v.order} to {order}")
        if order > self.k:
            raise OrderError(f"order {order} exceeds k = {self.k}")
        if order == v.order:
            return [v]
        out = []
        stack = [(v.a, v.b)]
        while stack:
            a, b = stack.pop()
            if a == b:
                out.append(VoNode(a, b, order))
                continue
            q = self.rmq.query(a + 1, b)
            if self.lcp_bar(q) >= order:
                out.append(VoNode(a, b, order))
                continue
            stack.append((q, b))
            stack.append((a, q - 1))
        return out

    def forward(self, v: VoNode, c: str) -> VoNode | None:
        self._check_node(v)
        code = self.dfa.code(c)
        if code <= 0:
            return None
        a, b = K.forward(self.dfa.nav, v.a - 1, v.b - 1, code)
        if a < 0:
            return None
        return self._maximal(int(a) + 1, int(b) + 1, min(v.order + 1, self.k))

    def backward(self, v: VoNode) -> VoNode:
        self._check_node(v)
        if v.order == 0:
            raise OrderError("the order-0 node has no predecessor node")
        d = self.dfa
        return self._maximal(d.pred_min(v.a), d.pred_max(v.b), v.order - 1)

    def start(self, suffix: str) -> VoNode | None:
        """The node of order len(suffix) whose k-mers end with suffix."""
        if len(suffix) > self.k:
            raise OrderError(f"suffix of length {len(suffix)} exceeds k = {self.k}")
        v: VoNode | None = self.root()
        for c in suffix:
            v = self.forward(v, c)
            if v is None:
                return None
        return v

    def size_report(self) -> dict[str, int]:
        rep = dict(self.dfa.size_report())
        rep.update(self.lcp.size_report())
        return rep

    def __repr__(self) -> str:
        return f"DeBruijnIndex(k={self.k}, n={self.n}, mode={self.mode!r})"


def build_dbg(strings: Iterable[str], k: int, mode: str = "sampled") -> DeBruijnIndex:
    return DeBruijnIndex.build(strings, k, mode)


def lcp_bar_access(x: DeBruijnIndex, i: int) -> int:
    return x.lcp_bar(i)


def vo_start(x: DeBruijnIndex, suffix: str) -> VoNode | None:
    return x.start(suffix)


def vo_shorter(x: DeBruijnIndex, v: VoNode, order: int) -> VoNode:
    return x.shorter(v, order)


def vo_longer(x: DeBruijnIndex, v: VoNode, order: int) -> list[VoNode]:
    return x.longer(v, order)


def vo_forward(x: DeBruijnIndex, v: VoNode, c: str) -> VoNode | None:
    return x.forward(v, c)


def vo_backward(x: DeBruijnIndex, v: VoNode) -> VoNode:
    return x.backward(v)
