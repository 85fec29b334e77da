"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 1024,8192] [--repeats 3]

Each backend runs in its own interpreter (WGLCP_DISABLE_NUMBA=0 / 1); the
numba timings exclude compilation because every kernel is warmed first.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _best(fn, repeats: int) -> float:
    fn()  # warm up (and compile under numba)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def worker(sizes: list[int], repeats: int) -> dict:
    from wglcp import BACKEND
    from wglcp.lcp_oracle import build_full_lcp
    from wglcp.lcp_sampled import SampledLcp, linear_h
    from wglcp.matching import matching_statistics
    from wglcp.random_graphs import random_walk_pattern, random_wheeler_dfa
    from wglcp.succinct import BitArray, Rmq

    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        bits = BitArray((rng.random(64 * n) < 0.5).astype(np.uint8))
        pos = rng.integers(0, len(bits) + 1, 2000)
        ks = rng.integers(1, bits.count() + 1, 2000)
        rmq = Rmq(rng.integers(0, 1000, 2 * n), lo=0)
        lo = rng.integers(0, 2 * n, 2000)
        hi = np.minimum(lo + rng.integers(0, n, 2000), 2 * n - 1)
        d = random_wheeler_dfa(n, 4, seed=n)
        full = build_full_lcp(d)
        s = SampledLcp.build(d, full, linear_h(n))
        p = random_walk_pattern(d, 200, seed=n)
        timings = {
            "rank1 x2000": _best(lambda: [bits.rank1(int(i)) for i in pos], repeats),
            "select1 x2000": _best(lambda: [bits.select1(int(k)) for k in ks], repeats),
            "rmq x2000": _best(lambda: rmq.query_many(lo, hi), repeats),
            "full lcp": _best(lambda: build_full_lcp(d), repeats),
            "sample": _best(lambda: SampledLcp.build(d, full, linear_h(n)), repeats),
            "access all": _best(s.access_all, repeats),
            "ms m=200": _best(lambda: matching_statistics(s, d, p), repeats),
        }
        rows.append({"n": n, "h": s.h, "timings": timings})
    return {"backend": BACKEND, "rows": rows}


def run_backend(disable: bool, sizes: list[int], repeats: int) -> dict:
    env = dict(os.environ, WGLCP_DISABLE_NUMBA="1" if disable else "0")
    cmd = [sys.executable, __file__, "--worker", "--sizes", ",".join(map(str, sizes)),
           "--repeats", str(repeats)]
    res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1024,4096")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    sizes = [int(t) for t in args.sizes.split(",")]
    if args.worker:
        json.dump(worker(sizes, args.repeats), sys.stdout)
        return 0

    fast = run_backend(False, sizes, args.repeats)
    slow = run_backend(True, sizes, args.repeats)
    print(f"{'n':>7} {'h':>3} {'kernel':<14} {fast['backend'] + ' ms':>11} "
          f"{slow['backend'] + ' ms':>11} {'speedup':>8}")
    for a, b in zip(fast["rows"], slow["rows"]):
        for name, t in a["timings"].items():
            u = b["timings"][name]
            print(f"{a['n']:>7} {a['h']:>3} {name:<14} {1e3 * t:>11.3f} {1e3 * u:>11.3f} {u / t:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
