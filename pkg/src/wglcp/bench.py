"""Space/time sweep over the sampling parameter h."""

from __future__ import annotations

import csv
import io
import time
from collections.abc import Iterable

import numpy as np

from . import _kernels as K
from .lcp_oracle import LcpArray
from .lcp_sampled import SampledLcp
from .wheeler import WheelerDfa

COLUMNS = (
    "n", "sigma", "h", "bits_total", "bits_samples", "popcount_C",
    "mean_access_hops", "mean_access_ns",
)


def _time_batch(nav, smp, entries: np.ndarray, repeats: int) -> float:
    K.lcp_access_batch(nav, smp, entries[:1])  # compile / warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        K.lcp_access_batch(nav, smp, entries)
        best = min(best, time.perf_counter_ns() - t0)
    return best / max(1, entries.shape[0])


def sweep(
    d: WheelerDfa,
    full: LcpArray | np.ndarray,
    hs: Iterable[int],
    *,
    mode: str = "full",
    infinity: int | None = None,
    repeats: int = 3,
) -> list[dict]:
    """One row per h. ``full`` holds the values the structure is built from."""
    base = sum(d.size_report().values())
    rows = []
    for h in hs:
        s = SampledLcp.build(d, full, h, mode=mode, infinity=infinity)
        entries = np.arange(2, s.hi + 1, dtype=np.int64)
        if entries.size:
            _, calls = s.access_all()
            hops = float(calls.mean())
            ns = _time_batch(d.nav, s._smp, entries, repeats)
        else:
            hops, ns = 0.0, 0.0
        rows.append({
            "n": d.n,
            "sigma": d.sigma,
            "h": s.h,
            "bits_total": base + s.aux_bits(),
            "bits_samples": 8 * s.lcp_star.nbytes,
            "popcount_C": s.popcount(),
            "mean_access_hops": round(hops, 4),
            "mean_access_ns": round(ns, 1),
            "_aux_bits": s.aux_bits(),
            "_word_width": s.word_width,
            "_max_hops": int(calls.max()) if entries.size else 0,
        })
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
