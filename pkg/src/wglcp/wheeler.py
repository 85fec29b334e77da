"""Wheeler DFA model: validation of a supplied Wheeler order and the compact
navigation index (label boundaries, unary degree codes, out-label wavelet
matrix) answering label, predecessor and forward-search queries.

States are 1-based in every public method; state 1 is the initial state and
carries a self-loop labelled with the initial symbol (``'#'`` by default).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import RangeError, Violation, WheelerViolation
from .succinct import BitArray, WaveletMatrix

Edge = tuple[int, int, str]


@dataclass(frozen=True)
class PlainAdjacency:
    """Uncompressed edge arrays kept next to the index as a test oracle.

    Arrays are 0-based; ``lam`` holds symbol codes.
    """

    src: np.ndarray
    dst: np.ndarray
    lam: np.ndarray
    pmin: np.ndarray
    pmax: np.ndarray

    def successors(self) -> dict[tuple[int, int], int]:
        return {
            (int(s), int(self.lam[d])): int(d) for s, d in zip(self.src, self.dst)
        }


def symbol_order(symbols: Iterable[str], initial: str) -> tuple[str, ...]:
    """Initial symbol first, every other symbol by code point."""
    rest = sorted(set(symbols) - {initial})
    return (initial, *rest)


class WheelerDfa:
    """A validated Wheeler DFA. Build with :func:`validate`."""

    def __init__(
        self,
        n: int,
        symbols: tuple[str, ...],
        out_bits: BitArray,
        in_bits: BitArray,
        boundary: BitArray,
        labels: WaveletMatrix,
        cedge: np.ndarray,
        finals: BitArray,
        e: int,
        plain: PlainAdjacency | None = None,
    ):
        self.n = n
        self.e = e
        self.symbols = symbols
        self.initial_symbol = symbols[0]
        self._codes = {s: c for c, s in enumerate(symbols)}
        self.out_bits = out_bits
        self.in_bits = in_bits
        self.boundary = boundary
        self.out_labels = labels
        self.cedge = np.asarray(cedge, dtype=np.int64)
        self.finals = finals
        self.plain = plain
        self.nav = (
            out_bits.kernel_view,
            in_bits.kernel_view,
            boundary.kernel_view,
            labels.kernel_view,
            self.cedge,
        )

    @property
    def sigma(self) -> int:
        """Number of real symbols (the initial symbol excluded)."""
        return len(self.symbols) - 1

    def code(self, symbol: str) -> int:
        """Symbol code, or -1 for a symbol outside the alphabet."""
        return self._codes.get(symbol, -1)

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"state {i} outside [1, {self.n}]")

    def label(self, i: int) -> str:
        self._check(i)
        return self.symbols[int(K.label_code(self.nav, i - 1))]

    def label_code(self, i: int) -> int:
        self._check(i)
        return int(K.label_code(self.nav, i - 1))

    def pred_min(self, i: int) -> int:
        self._check(i)
        return int(K.pred_min(self.nav, i - 1)) + 1

    def pred_max(self, i: int) -> int:
        self._check(i)
        return int(K.pred_max(self.nav, i - 1)) + 1

    def forward_search(self, r: int, s: int, c: str) -> tuple[int, int] | None:
        """Interval of c-labelled states with a predecessor in [r, s]."""
        if not 1 <= r <= s <= self.n:
            raise RangeError(f"interval [{r}, {s}] outside [1, {self.n}]")
        code = self.code(c)
        if code < 0:
            return None
        a, b = K.forward(self.nav, r - 1, s - 1, code)
        if a < 0:
            return None
        return int(a) + 1, int(b) + 1

    def is_final(self, i: int) -> bool:
        self._check(i)
        return bool(self.finals[i])

    def edges(self) -> list[Edge]:
        """Edge list (1-based), recovered from the index alone."""
        out = []
        for i in range(self.n):
            for t in range(int(K.out_degree(self.nav, i))):
                code = int(K.out_label(self.nav, i, t))
                a, _ = K.forward(self.nav, i, i, code)
                out.append((i + 1, int(a) + 1, self.symbols[code]))
        return out

    def final_states(self) -> list[int]:
        return [int(i) + 1 for i in np.flatnonzero(self.finals.to_numpy())]

    def size_report(self) -> dict[str, int]:
        return {
            "out_degrees": self.out_bits.size_bits(),
            "in_degrees": self.in_bits.size_bits(),
            "edge_labels": self.out_labels.size_bits(),
            "label_boundaries": self.boundary.size_bits(),
            "label_offsets": 64 * self.cedge.shape[0],
            "finals": self.finals.size_bits(),
        }

    def __repr__(self) -> str:
        return f"WheelerDfa(n={self.n}, e={self.e}, sigma={self.sigma})"


def validate(
    n: int,
    edges: Iterable[Sequence],
    finals: Iterable[int] = (),
    *,
    labels: Sequence[str] | None = None,
    initial_symbol: str = "#",
) -> WheelerDfa:
    """Check the Wheeler axioms on states numbered in the claimed order.

    ``edges`` holds ``(src, dst, label)`` triples with 1-based states. The
    initial self-loop is added when absent. ``labels``, when given, is the
    claimed incoming label of each state (index 0 for state 1) and must agree
    with the edges. Every violation found is reported together in one
    :class:`WheelerViolation`.
    """
    problems: list[Violation] = []
    raw = [(int(s), int(d), str(c)) for s, d, c in edges]
    finals = sorted({int(f) for f in finals})
    if n < 1:
        raise WheelerViolation([Violation("range", "automaton needs at least one state", (n,))])
    for s, d, c in raw:
        if not (1 <= s <= n and 1 <= d <= n):
            problems.append(Violation("range", f"edge ({s}, {d}, {c!r}) references a missing state", (s, d)))
    for f in finals:
        if not 1 <= f <= n:
            problems.append(Violation("range", f"final state {f} outside [1, {n}]", (f,)))
    if problems:
        raise WheelerViolation(problems)

    loop = (1, 1, initial_symbol)
    if loop not in raw:
        raw.append(loop)
    raw = sorted(set(raw))

    incoming: dict[int, set[str]] = {}
    for s, d, c in raw:
        incoming.setdefault(d, set()).add(c)
        if d == 1 and (s, c) != (1, initial_symbol):
            problems.append(Violation(
                "initial-incoming",
                f"edge ({s}, 1, {c!r}) enters the initial state",
                (s, 1),
            ))
        elif c == initial_symbol and d != 1:
            problems.append(Violation(
                "initial-label",
                f"edge ({s}, {d}) uses the reserved symbol {initial_symbol!r}",
                (s, d),
            ))

    lam: list[str | None] = [None] * (n + 1)
    for d in range(1, n + 1):
        got = incoming.get(d, set())
        if d == 1:
            lam[1] = initial_symbol
            continue
        if not got:
            problems.append(Violation("no-incoming", f"state {d} has no incoming edge", (d,)))
            continue
        if len(got) > 1:
            problems.append(Violation(
                "input-consistency",
                f"state {d} is entered by labels {sorted(got)}",
                (d, tuple(sorted(got))),
            ))
        lam[d] = min(got)
    if labels is not None:
        if len(labels) != n:
            problems.append(Violation("range", f"{len(labels)} labels for {n} states", (len(labels),)))
        else:
            for d in range(1, n + 1):
                if lam[d] is not None and labels[d - 1] != lam[d]:
                    problems.append(Violation(
                        "input-consistency",
                        f"state {d} declared {labels[d - 1]!r} but entered by {lam[d]!r}",
                        (d,),
                    ))

    seen: dict[tuple[int, str], int] = {}
    for s, d, c in raw:
        if (s, c) in seen and seen[(s, c)] != d:
            problems.append(Violation(
                "determinism",
                f"state {s} has two {c!r}-edges (to {seen[(s, c)]} and {d})",
                (s, seen[(s, c)], d),
            ))
        seen.setdefault((s, c), d)

    symbols = symbol_order((c for _, _, c in raw), initial_symbol)
    rank = {c: i for i, c in enumerate(symbols)}
    for i in range(1, n):
        a, b = lam[i], lam[i + 1]
        if a is not None and b is not None and rank[a] > rank[b]:
            problems.append(Violation(
                "axiom1",
                f"state {i} labelled {a!r} precedes state {i + 1} labelled {b!r}",
                (i, i + 1),
            ))

    preds: dict[int, list[int]] = {}
    for s, d, _ in raw:
        preds.setdefault(d, []).append(s)
    by_label: dict[str, list[int]] = {}
    for d in range(2, n + 1):
        if lam[d] is not None and d in preds:
            by_label.setdefault(lam[d], []).append(d)
    for c, states in by_label.items():
        for u, v in zip(states, states[1:]):
            pu, pv = max(preds[u]), min(preds[v])
            if pu >= pv:
                problems.append(Violation(
                    "axiom2",
                    f"edges ({pu}, {u}) and ({pv}, {v}) with label {c!r} cross",
                    ((pu, u), (pv, v)),
                ))

    adj: dict[int, list[int]] = {}
    for s, d, _ in raw:
        adj.setdefault(s, []).append(d)
    reached = {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in reached:
                reached.add(v)
                queue.append(v)
    for d in range(1, n + 1):
        if d not in reached:
            problems.append(Violation("unreachable", f"state {d} is not reachable from state 1", (d,)))

    if problems:
        raise WheelerViolation(problems)
    return _build_index(n, raw, lam, symbols, finals)


def _build_index(n, raw, lam, symbols, finals) -> WheelerDfa:
    rank = {c: i for i, c in enumerate(symbols)}
    e = len(raw)
    src = np.fromiter((s - 1 for s, _, _ in raw), dtype=np.int64, count=e)
    dst = np.fromiter((d - 1 for _, d, _ in raw), dtype=np.int64, count=e)
    lam_codes = np.array([rank[lam[i]] for i in range(1, n + 1)], dtype=np.int64)
    codes = lam_codes[dst]

    order = np.lexsort((codes, src))
    outdeg = np.bincount(src, minlength=n)
    indeg = np.bincount(dst, minlength=n)
    labels = WaveletMatrix(codes[order])

    out_bits = BitArray(_unary(outdeg))
    in_bits = BitArray(_unary(indeg))
    boundary = np.ones(n, dtype=np.uint8)
    boundary[1:] = lam_codes[1:] != lam_codes[:-1]

    ncodes = len(symbols)
    per_code = np.bincount(lam_codes, weights=indeg, minlength=ncodes).astype(np.int64)
    cedge = np.zeros(ncodes + 1, dtype=np.int64)
    np.cumsum(per_code, out=cedge[1:])

    fin = np.zeros(n, dtype=np.uint8)
    for f in finals:
        fin[f - 1] = 1

    pmin = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    pmax = np.full(n, -1, dtype=np.int64)
    np.minimum.at(pmin, dst, src)
    np.maximum.at(pmax, dst, src)
    plain = PlainAdjacency(src, dst, lam_codes, pmin, pmax)

    return WheelerDfa(
        n, symbols, out_bits, in_bits, BitArray(boundary), labels, cedge,
        BitArray(fin), e, plain,
    )


def _unary(degrees: np.ndarray) -> np.ndarray:
    """One 1-bit per state followed by its degree in 0-bits, plus a closing 1."""
    n = degrees.shape[0]
    total = n + int(degrees.sum()) + 1
    bits = np.zeros(total, dtype=np.uint8)
    starts = np.arange(n) + np.concatenate([[0], np.cumsum(degrees)[:-1]])
    bits[starts] = 1
    bits[-1] = 1
    return bits


def plain_forward(plain: PlainAdjacency, r: int, s: int, code: int) -> tuple[int, int] | None:
    """Forward search by direct enumeration over the edge arrays (1-based)."""
    mask = (plain.src >= r - 1) & (plain.src <= s - 1) & (plain.lam[plain.dst] == code)
    if not mask.any():
        return None
    targets = plain.dst[mask]
    return int(targets.min()) + 1, int(targets.max()) + 1
