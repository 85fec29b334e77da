"""Random inputs for property tests and benchmarks.

Wheeler DFAs are grown as a random trie, numbered in colex order of the
backward path labels, then thickened with extra edges whose source lies
strictly between the predecessor ranges of the target's same-label
neighbours. That placement keeps both axioms and determinism intact, so
every generated automaton validates and has exactly ``n`` reachable states.
"""

from __future__ import annotations

import string

import numpy as np

from .wheeler import WheelerDfa, validate

SYMBOLS = string.digits + string.ascii_lowercase + string.ascii_uppercase
DNA = "ACGT"


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_wheeler_edges(
    n: int,
    sigma: int,
    extra: float = 0.5,
    seed=None,
    final_rate: float = 0.2,
) -> tuple[int, list[tuple[int, int, str]], list[int]]:
    """Edge list (1-based, in Wheeler order) of a random Wheeler DFA.

    ``extra`` is the expected number of additional edges per state on top of
    the spanning trie; the trie alone makes every state reachable.
    """
    if n < 1:
        raise ValueError("need at least one state")
    if not 1 <= sigma <= len(SYMBOLS):
        raise ValueError(f"sigma must be in [1, {len(SYMBOLS)}]")
    rng = _rng(seed)
    alphabet = SYMBOLS[:sigma]

    parent = np.full(n, -1, dtype=np.int64)
    label = np.zeros(n, dtype=np.int64)  # 1-based symbol code, 0 for the root
    used: list[set[int]] = [set() for _ in range(n)]
    open_nodes = [0]
    for v in range(1, n):
        while True:
            slot = int(rng.integers(len(open_nodes)))
            p = open_nodes[slot]
            if len(used[p]) < sigma:
                break
            open_nodes[slot] = open_nodes[-1]
            open_nodes.pop()
        free = [c for c in range(1, sigma + 1) if c not in used[p]]
        c = free[int(rng.integers(len(free)))]
        used[p].add(c)
        parent[v] = p
        label[v] = c
        open_nodes.append(v)

    keys = []
    for v in range(n):
        key = []
        x = v
        while x > 0:
            key.append(int(label[x]))
            x = int(parent[x])
        keys.append(tuple(key))
    order = sorted(range(n), key=keys.__getitem__)
    pos = np.empty(n, dtype=np.int64)
    pos[np.asarray(order)] = np.arange(n)

    lam = label[np.asarray(order)]  # lam[i] for 0-based state i
    out: set[tuple[int, int]] = set()
    edges = []
    pmin = np.zeros(n, dtype=np.int64)
    pmax = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        s, d = int(pos[parent[v]]), int(pos[v])
        edges.append((s, d))
        out.add((s, int(lam[d])))
        pmin[d] = pmax[d] = s

    budget = int(rng.poisson(extra * n)) if extra > 0 and n > 1 else 0
    for _ in range(budget):
        d = int(rng.integers(1, n))
        c = int(lam[d])
        lo = pmax[d - 1] + 1 if lam[d - 1] == c else 0
        hi = pmin[d + 1] - 1 if d + 1 < n and lam[d + 1] == c else n - 1
        if lo > hi:
            continue
        s = int(rng.integers(lo, hi + 1))
        if (s, c) in out:
            continue
        out.add((s, c))
        edges.append((s, d))
        pmin[d] = min(pmin[d], s)
        pmax[d] = max(pmax[d], s)

    triples = [(s + 1, d + 1, alphabet[int(lam[d]) - 1]) for s, d in edges]
    finals = [i + 1 for i in range(n) if rng.random() < final_rate]
    return n, triples, finals


def random_wheeler_dfa(n: int, sigma: int, extra: float = 0.5, seed=None) -> WheelerDfa:
    n, edges, finals = random_wheeler_edges(n, sigma, extra, seed)
    return validate(n, edges, finals)


def random_walk_pattern(
    d: WheelerDfa,
    m: int,
    seed=None,
    noise: float = 0.1,
    foreign: str = "?",
) -> str:
    """Pattern of length m read along random forward walks, with point
    corruptions (another symbol or one outside the alphabet) at rate noise."""
    rng = _rng(seed)
    succ: dict[int, list[tuple[int, str]]] = {}
    for s, t, c in d.edges():
        if c != d.initial_symbol:
            succ.setdefault(s, []).append((t, c))
    real = d.symbols[1:]
    out = []
    state = int(rng.integers(1, d.n + 1))
    while len(out) < m:
        nxt = succ.get(state)
        if not nxt:
            state = int(rng.integers(1, d.n + 1))
            if not real:
                out.append(foreign)
            continue
        t, c = nxt[int(rng.integers(len(nxt)))]
        roll = rng.random()
        if roll < noise / 2 and real:
            c = real[int(rng.integers(len(real)))]
        elif roll < noise:
            c = foreign
        out.append(c)
        state = t
        if rng.random() < 0.05:
            state = int(rng.integers(1, d.n + 1))
    return "".join(out)


def random_dna(count: int, length: int, seed=None) -> list[str]:
    rng = _rng(seed)
    codes = rng.integers(0, 4, size=(count, length))
    return ["".join(DNA[c] for c in row) for row in codes]
