"""Acceptance suite: one check per criterion, each printing PASS or FAIL.

Run under pytest (results are echoed in the terminal summary) or directly
with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from collapse import collapse_mismatches  # noqa: E402
from golden import (  # noqa: E402
    DBG_K, DBG_LCP_BAR, DBG_NODES, DBG_R, DBG_SAMPLING, EXAMPLE_LCP, EXAMPLE_R,
)

from wglcp.bench import sweep  # noqa: E402
from wglcp.debruijn import DeBruijnIndex  # noqa: E402
from wglcp.io import WdfaIndex, dumps, loads, read_edge_list, read_strings  # noqa: E402
from wglcp.lcp_oracle import build_full_lcp  # noqa: E402
from wglcp.lcp_sampled import PlainLcp, SampledLcp  # noqa: E402
from wglcp.matching import matching_statistics, ms_oracle  # noqa: E402
from wglcp.random_graphs import random_dna, random_walk_pattern, random_wheeler_dfa  # noqa: E402
from wglcp.succinct import BitArray, Rmq  # noqa: E402
from wglcp.wheeler import validate  # noqa: E402

DATA = Path(__file__).parent / "data"
HS = (1, 2, 4, 8, 16, 32)
EXAMPLE_PATTERNS = ("efh", "ijkl", "aaaa", "gf", "", "z?e", "e#f", "abcdefghijkl", "lkjihgfe")

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script
    ACCEPTANCE = {}


def example_dfa():
    return validate(*read_edge_list(DATA / "example_dfa.txt"))


def example_strings():
    return read_strings(DATA / "example_strings.txt")


def record(no: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[no] = (ok, detail)
    assert ok, f"criterion {no}: {detail}"


# -- 1 -------------------------------------------------------------------------


def check_example_golden():
    t0 = time.perf_counter()
    d = example_dfa()
    full = build_full_lcp(d)
    got = [None if full.is_infinite(i) else full[i] for i in range(2, 33)]
    s = SampledLcp.build(d, full, 4)
    r = {i: s.r_detail(i) for i in range(2, 33) if s.r_detail(i) is not None}
    dt = time.perf_counter() - t0
    bad = [i for i, (a, b) in enumerate(zip(got, EXAMPLE_LCP), start=2) if a != b]
    rbad = sorted(set(r) ^ set(EXAMPLE_R)) + [i for i in r if i in EXAMPLE_R and r[i] != EXAMPLE_R[i]]
    ok = not bad and not rbad and dt < 1.0
    return ok, f"31 LCP values, {len(EXAMPLE_R)} R rows; mismatches {bad + rbad}; {dt:.3f} s"


# -- 2 -------------------------------------------------------------------------


def check_dbg_golden():
    t0 = time.perf_counter()
    strings = example_strings()
    x = DeBruijnIndex.build(strings, DBG_K)
    r = {i: x.r_detail(i) for i in range(2, 12) if x.r_detail(i) is not None}
    entries, values = DBG_SAMPLING
    y = DeBruijnIndex.build(strings, DBG_K, entries=entries, values=values)
    ext = [y.lcp_bar(i) for i in range(2, 12)]
    dt = time.perf_counter() - t0
    ok = (
        len(strings) == 9
        and x.nodes() == DBG_NODES
        and list(x.lcp_bar_all()) == DBG_LCP_BAR
        and r == DBG_R
        and y.lcp.sampled_entries() == entries
        and ext == DBG_LCP_BAR
        and dt < 1.0
    )
    return ok, (
        f"nodes {x.nodes() == DBG_NODES}, bar {list(x.lcp_bar_all()) == DBG_LCP_BAR}, "
        f"R {r == DBG_R}, external sampling {ext == DBG_LCP_BAR}; {dt:.3f} s"
    )


# -- 3 and 4 share one sweep -------------------------------------------------


def sweep_automata(cases: int = 120, max_n: int = 500):
    """(label, lcp structures, expected values) over fixtures and random DFAs."""
    d = example_dfa()
    full = build_full_lcp(d)
    yield "example", [SampledLcp.build(d, full, h) for h in HS], full.values
    x = DeBruijnIndex.build(example_strings(), DBG_K)
    bar = x.lcp_bar_all()
    yield "dbg", [SampledLcp.build(x.dfa, bar, h, mode="bar", infinity=DBG_K) for h in HS], bar
    rng = np.random.default_rng(2024)
    for c in range(cases):
        n = int(rng.integers(1, max_n + 1)) if c else max_n
        d = random_wheeler_dfa(n, int(rng.integers(1, 9)), extra=float(rng.uniform(0, 2)), seed=rng)
        full = build_full_lcp(d)
        yield f"random{c}", [SampledLcp.build(d, full, h) for h in HS], full.values


_SWEEP: dict = {}


def run_sweep():
    if _SWEEP:
        return _SWEEP
    t0 = time.perf_counter()
    bound_bad, access_bad, calls_bad = [], [], []
    count, worst = 0, 0.0
    for label, structs, expected in sweep_automata():
        count += 1
        for s in structs:
            m = len(s)
            if s.popcount() * s.h > m:
                bound_bad.append((label, s.h, s.popcount(), m))
            worst = max(worst, s.popcount() * s.h / max(1, m))
            vals, calls = s.access_all()
            if not np.array_equal(vals, expected):
                access_bad.append((label, s.h))
            if calls.size and int(calls.max()) > 2 * s.h - 1:
                calls_bad.append((label, s.h, int(calls.max())))
    _SWEEP.update(
        count=count, bound_bad=bound_bad, access_bad=access_bad, calls_bad=calls_bad,
        worst=worst, seconds=time.perf_counter() - t0,
    )
    return _SWEEP


def check_sampling_bound():
    s = run_sweep()
    ok = not s["bound_bad"] and s["count"] >= 102
    return ok, (
        f"{s['count']} automata x h in {list(HS)}; max popcount*h/entries {s['worst']:.3f}; "
        f"violations {s['bound_bad'][:3]}"
    )


def check_access():
    s = run_sweep()
    ok = not s["access_bad"] and not s["calls_bad"] and s["seconds"] < 60
    return ok, (
        f"{s['count']} automata; wrong {s['access_bad'][:3]}, over 2h-1 calls {s['calls_bad'][:3]}; "
        f"{s['seconds']:.1f} s"
    )


# -- 5 -------------------------------------------------------------------------


def check_matching(cases: int = 520):
    t0 = time.perf_counter()
    bad = []
    d = example_dfa()
    s = SampledLcp.build(d, build_full_lcp(d), 4)
    x = DeBruijnIndex.build(example_strings(), DBG_K)
    g = SampledLcp.build(x.dfa, build_full_lcp(x.dfa), 2)
    for p in EXAMPLE_PATTERNS:
        if matching_statistics(s, d, p) != ms_oracle(d, p):
            bad.append(("example", p))
    for p in ("ACGT", "TACGTCGA", "GGGAC", "$AC", "CGTACTCGA"):
        if matching_statistics(g, x.dfa, p) != ms_oracle(x.dfa, p):
            bad.append(("dbg", p))
    rng = np.random.default_rng(77)
    for c in range(cases):
        n = int(rng.integers(1, 301))
        d = random_wheeler_dfa(n, int(rng.integers(1, 8)), extra=float(rng.uniform(0, 2)), seed=rng)
        s = SampledLcp.build(d, build_full_lcp(d), int(rng.choice(HS)))
        p = random_walk_pattern(d, int(rng.integers(0, 201)), seed=rng, noise=float(rng.uniform(0, 0.3)))
        if matching_statistics(s, d, p) != ms_oracle(d, p):
            bad.append((c, n, p[:20]))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    return ok, f"fixtures + {cases} random cases; mismatches {bad[:3]}; {dt:.1f} s"


# -- 6 -------------------------------------------------------------------------


def hop_bound(k: int) -> int:
    # the order-1 view needs one hop even though 2*ceil(log2 1) - 1 < 1
    return max(1, 2 * math.ceil(math.log2(k)) - 1) if k > 1 else 1


def check_collapse(cases: int = 40):
    t0 = time.perf_counter()
    bad, hops_bad = [], []
    rng = np.random.default_rng(31)
    jobs = [(example_strings(), DBG_K)]
    for c in range(cases):
        k = 16 if c < 4 else int(rng.integers(1, 17))
        count = int(rng.integers(1, 8))
        jobs.append((random_dna(count, int(rng.integers(k, k + 30)), seed=rng), k))
    for strings, k in jobs:
        x = DeBruijnIndex.build(strings, k)
        miss = collapse_mismatches(strings, k, x)
        if miss:
            bad.append((k, miss[:2]))
        worst = max((x.lcp_bar_with_hops(i)[1] for i in range(2, x.n + 1)), default=0)
        if worst > hop_bound(k):
            hops_bad.append((k, worst))
    dt = time.perf_counter() - t0
    ok = not bad and not hops_bad and dt < 120
    return ok, (
        f"{len(jobs)} string sets, k <= 16, every k' <= k; mismatches {bad[:2]}; "
        f"hop violations {hops_bad[:3]}; {dt:.1f} s"
    )


# -- 7 -------------------------------------------------------------------------


def check_space():
    bad = []
    fit_rows = []
    budget = []
    for e in range(8, 16):
        n = 2 ** e
        d = random_wheeler_dfa(n, 4, seed=e)
        full = build_full_lcp(d)
        hl = math.ceil(math.log2(n))
        hs = sorted(set(HS) | {64, hl})
        rows = {r["h"]: r for r in sweep(d, full, hs, repeats=1)}
        for h, r in rows.items():
            cap = math.ceil((2 * n - 1) / h) * r["_word_width"]
            if r["bits_samples"] > cap:
                bad.append(("samples", n, h, r["bits_samples"], cap))
            fit_rows.append((n, h, r["_aux_bits"]))
        doubling = [rows[h]["bits_samples"] for h in (1, 2, 4, 8, 16, 32, 64)]
        if any(b > a for a, b in zip(doubling, doubling[1:])):
            bad.append(("doubling", n, doubling))
        per_n = rows[hl]["_aux_bits"] / n
        budget.append(per_n)
        if per_n > 64:
            bad.append(("budget", n, round(per_n, 2)))
    a = np.array([[n, n / h * math.log2(n)] for n, h, _ in fit_rows])
    y = np.array([v for *_, v in fit_rows], dtype=float)
    (c1, c2), *_ = np.linalg.lstsq(a, y, rcond=None)
    ok = not bad
    return ok, (
        f"n = 2^8..2^15; aux/n at h=ceil(log2 n) in [{min(budget):.1f}, {max(budget):.1f}] (<= 64); "
        f"fit aux ~ {c1:.2f} n + {c2:.2f} (n/h) log2 n; violations {bad[:3]}"
    )


# -- 8 -------------------------------------------------------------------------


def naive_rmq(values, i, j):
    seg = values[i:j + 1]
    return i + len(seg) - 1 - int(np.argmin(seg[::-1]))


def check_substrate():
    import itertools

    bad = []
    cases = 0
    # rank1 (and select) over every pattern up to 12 bits, then 200 patterns per length to 64
    rng = np.random.default_rng(8)
    patterns = [np.array(p, dtype=np.uint8) for L in range(0, 13) for p in itertools.product((0, 1), repeat=L)]
    for L in range(13, 65):
        patterns += [(rng.random(L) < rng.random()).astype(np.uint8) for _ in range(200)]
    for bits in patterns:
        b = BitArray(bits)
        prefix = np.concatenate([[0], np.cumsum(bits)])
        got = [b.rank1(i) for i in range(len(bits) + 1)]
        cases += len(got)
        if got != prefix.tolist():
            bad.append(("rank", bits.tolist()))
        ones = (np.flatnonzero(bits) + 1).tolist()
        if [b.select1(k) for k in range(1, len(ones) + 1)] != ones:
            bad.append(("select", bits.tolist()))
    # rmq over every ternary array up to 7 values, then random arrays to 64, all intervals
    arrays = [np.array(v) for L in range(1, 8) for v in itertools.product(range(3), repeat=L)]
    for L in range(8, 65):
        arrays += [rng.integers(0, int(rng.integers(1, 20)), L) for _ in range(40)]
    for vals in arrays:
        r = Rmq(vals, lo=1)
        L = len(vals)
        ii, jj = np.triu_indices(L)
        got = r.query_many(ii + 1, jj + 1) - 1
        exp = [naive_rmq(vals, i, j) for i, j in zip(ii, jj)]
        cases += len(exp)
        if got.tolist() != exp:
            bad.append(("rmq", vals.tolist()))
    # 10^5 random queries on long structures
    bits = (rng.random(200_000) < 0.3).astype(np.uint8)
    b = BitArray(bits)
    prefix = np.concatenate([[0], np.cumsum(bits)])
    pos = rng.integers(0, bits.size + 1, 100_000)
    if any(b.rank1(int(p)) != prefix[p] for p in pos):
        bad.append(("rank-random",))
    vals = rng.integers(0, 100, 50_000)
    r = Rmq(vals, lo=0)
    i = rng.integers(0, vals.size, 100_000)
    j = np.minimum(i + rng.integers(0, 3000, 100_000), vals.size - 1)
    if r.query_many(i, j).tolist() != [naive_rmq(vals, a, c) for a, c in zip(i, j)]:
        bad.append(("rmq-random",))
    cases += 200_000
    # serialization round trips
    c = BitArray.from_words(b.words, len(b))
    if any(c.rank1(int(p)) != b.rank1(int(p)) for p in pos[:5000]):
        bad.append(("bitarray-words",))
    s2 = Rmq.from_bits(r.bits.words, len(r.bits), vals.size, 0)
    if not np.array_equal(s2.query_many(i[:5000], j[:5000]), r.query_many(i[:5000], j[:5000])):
        bad.append(("rmq-bits",))
    rt = 0
    for seed in range(12):
        d = random_wheeler_dfa(int(rng.integers(1, 300)), int(rng.integers(1, 7)), seed=seed)
        full = build_full_lcp(d)
        for lcp in (SampledLcp.build(d, full, int(rng.choice(HS))), PlainLcp(d, full.values, full.infinity)):
            back = loads(dumps(WdfaIndex(d, lcp)))
            p = random_walk_pattern(d, 80, seed=seed)
            same = (
                back.dfa.edges() == d.edges()
                and back.dfa.final_states() == d.final_states()
                and np.array_equal(back.lcp.access_all()[0], lcp.access_all()[0])
                and matching_statistics(back.lcp, back.dfa, p) == matching_statistics(lcp, d, p)
            )
            rt += 1
            if not same:
                bad.append(("container", seed, lcp))
    for k in (1, 3, 9):
        strings = random_dna(5, 25, seed=k)
        for mode in ("sampled", "baseline"):
            x = DeBruijnIndex.build(strings, k, mode)
            y = loads(dumps(x))
            rt += 1
            if (y.nodes() != x.nodes() or list(y.lcp_bar_all()) != list(x.lcp_bar_all())
                    or y.longer(y.root(), k - 1) != x.longer(x.root(), k - 1)):
                bad.append(("dbg-container", k, mode))
    ok = not bad
    return ok, f"{cases} rank/select/rmq checks, {rt} container round trips; failures {bad[:3]}"


CHECKS = {
    1: check_example_golden,
    2: check_dbg_golden,
    3: check_sampling_bound,
    4: check_access,
    5: check_matching,
    6: check_collapse,
    7: check_space,
    8: check_substrate,
}


@pytest.mark.parametrize("no", sorted(CHECKS))
def test_criterion(no):
    record(no, *CHECKS[no]())


if __name__ == "__main__":
    failed = 0
    for no, fn in CHECKS.items():
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {no}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
