"""Low-level kernels behind the succinct structures.

Every kernel here is written in the numba-compatible subset of Python and
operates on plain numpy arrays (bitvectors travel as ``(words, sup, sub,
nbits)`` tuples). When numba is importable and ``WGLCP_DISABLE_NUMBA`` is
unset or ``"0"``, kernels are compiled with ``@njit``; otherwise the very
same functions run as ordinary Python. Construction kernels that vectorise
well carry a separate numpy implementation used on the fallback path.

Conventions: positions and states are 0-based inside this module.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("WGLCP_DISABLE_NUMBA", "0").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and not DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"

SUPER_WORDS = 8  # 512-bit superblocks
EXCESS_BLOCK = 256  # bits per min-excess block


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U56 = np.uint64(56)


def _popcount_swar(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> _U2) & _M2)
    x = (x + (x >> _U4)) & _M4
    return np.int64((x * _H01) >> _U56)


def _popcount_py(x):
    return int(x).bit_count()


popcount64 = jit(_popcount_swar) if USE_NUMBA else _popcount_py


# ---------------------------------------------------------------------------
# bitvectors
# ---------------------------------------------------------------------------


def pack_bits(bits):
    """Pack a 0/1 array into little-endian uint64 words plus one spare word."""
    bits = np.asarray(bits, dtype=np.uint8)
    nbits = bits.shape[0]
    nwords = nbits // 64 + 1
    padded = np.zeros(nwords * 64, dtype=np.uint8)
    padded[:nbits] = bits
    packed = np.packbits(padded, bitorder="little")
    return packed.view("<u8").astype(np.uint64), nbits


def unpack_bits(words, nbits):
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:nbits]


def _directory_np(words):
    counts = np.bitwise_count(words).astype(np.int64)
    cum = np.zeros(words.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts, out=cum[1:])
    nwords = words.shape[0]
    nsup = (nwords + SUPER_WORDS - 1) // SUPER_WORDS
    idx = np.minimum(np.arange(nsup + 1) * SUPER_WORDS, nwords)
    sup = cum[idx].astype(np.uint32)
    base = cum[(np.arange(nwords) // SUPER_WORDS) * SUPER_WORDS]
    sub = (cum[:nwords] - base).astype(np.uint16)
    return sup, sub


def _directory_loop(words):
    nwords = words.shape[0]
    nsup = (nwords + SUPER_WORDS - 1) // SUPER_WORDS
    sup = np.zeros(nsup + 1, dtype=np.uint32)
    sub = np.zeros(nwords, dtype=np.uint16)
    total = 0
    inner = 0
    for w in range(nwords):
        if w % SUPER_WORDS == 0:
            sup[w // SUPER_WORDS] = total
            inner = 0
        sub[w] = inner
        c = popcount64(words[w])
        inner += c
        total += c
    sup[nsup] = total
    return sup, sub


build_directory = jit(_directory_loop) if USE_NUMBA else _directory_np


@jit
def get_bit(words, p):
    return np.int64((words[p >> 6] >> np.uint64(p & 63)) & _ONE)


@jit
def rank1(words, sup, sub, i):
    """Number of set bits in positions [0, i)."""
    w = i >> 6
    mask = (_ONE << np.uint64(i & 63)) - _ONE  # empty mask at word boundaries
    return np.int64(sup[w >> 3]) + np.int64(sub[w]) + popcount64(words[w] & mask)


def _select_tables():
    pop = np.zeros(256, dtype=np.int64)
    pos = np.zeros(256 * 8, dtype=np.int64)
    for v in range(256):
        r = 0
        for q in range(8):
            if (v >> q) & 1:
                pos[v * 8 + r] = q
                r += 1
        pop[v] = r
    return pop, pos


_BYTE_POP, _BYTE_SELECT = _select_tables()


@jit
def _select_in_word(x, r):
    # r-th set bit (1-based) of x
    base = 0
    for b in range(8):
        byte = np.int64((x >> np.uint64(8 * b)) & np.uint64(0xFF))
        c = _BYTE_POP[byte]
        if r <= c:
            return base + _BYTE_SELECT[byte * 8 + r - 1]
        r -= c
        base += 8
    return -1


@jit
def _zeros_before(sup, nwords, j):
    return min(j * SUPER_WORDS, nwords) * 64 - np.int64(sup[j])


@jit
def _locate(sup, nwords, k, zeros):
    """Superblock holding the k-th one (or zero): the largest j with
    count(j) < k. Starts from a density guess, which lands on the answer or
    a neighbour for near-uniform data, then falls back to bisection."""
    nsup = sup.shape[0] - 1
    if zeros:
        total = _zeros_before(sup, nwords, nsup)
    else:
        total = np.int64(sup[nsup])
    lo = 0
    hi = nsup  # count(lo) < k <= count(hi)
    g = min(((k - 1) * nsup) // max(total, 1), nsup - 1)
    if g > 0:
        cg = _zeros_before(sup, nwords, g) if zeros else np.int64(sup[g])
        if cg < k:
            lo = g
            if g + 1 < nsup:
                c1 = _zeros_before(sup, nwords, g + 1) if zeros else np.int64(sup[g + 1])
                if c1 >= k:
                    return g
                lo = g + 1
        else:
            hi = g
            c1 = _zeros_before(sup, nwords, g - 1) if zeros else np.int64(sup[g - 1])
            if c1 < k:
                return g - 1
            hi = g - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        c = _zeros_before(sup, nwords, mid) if zeros else np.int64(sup[mid])
        if c < k:
            lo = mid
        else:
            hi = mid
    return lo


@jit
def select1(words, sup, sub, k):
    """Position of the k-th set bit (k is 1-based). Caller guarantees k <= total."""
    nwords = words.shape[0]
    lo = _locate(sup, nwords, k, False)
    rem = k - np.int64(sup[lo])
    w = lo * SUPER_WORDS
    wend = min(w + SUPER_WORDS, nwords)
    while w + 1 < wend and np.int64(sub[w + 1]) < rem:
        w += 1
    rem -= np.int64(sub[w])
    return w * 64 + _select_in_word(words[w], rem)


@jit
def select0(words, sup, sub, k):
    """Position of the k-th zero bit (k is 1-based)."""
    nwords = words.shape[0]
    lo = _locate(sup, nwords, k, True)
    rem = k - (lo * SUPER_WORDS * 64 - np.int64(sup[lo]))
    w = lo * SUPER_WORDS
    wend = min(w + SUPER_WORDS, nwords)
    while w + 1 < wend and ((w + 1 - lo * SUPER_WORDS) * 64 - np.int64(sub[w + 1])) < rem:
        w += 1
    rem -= (w - lo * SUPER_WORDS) * 64 - np.int64(sub[w])
    return w * 64 + _select_in_word(~words[w], rem)


@jit
def bv_rank1(bv, i):
    return rank1(bv[0], bv[1], bv[2], i)


@jit
def bv_select1(bv, k):
    return select1(bv[0], bv[1], bv[2], k)


@jit
def bv_select0(bv, k):
    return select0(bv[0], bv[1], bv[2], k)


# ---------------------------------------------------------------------------
# range minimum queries over a stack-encoded parentheses sequence
#
# For values A[0..m), scanning left to right, element i first pops every
# stacked index t with A[t] >= A[i] (one 0-bit each) and is then pushed
# (one 1-bit). The rightmost minimum of A[i..j] is the deepest element of
# the stack after step j that is >= i, which the excess walk between the
# pushes of i and j identifies without looking at A.
# ---------------------------------------------------------------------------


def _stack_bits_loop(values):
    m = values.shape[0]
    out = np.zeros(2 * m, dtype=np.uint8)
    stack = np.empty(m, dtype=np.int64)
    top = 0
    p = 0
    for i in range(m):
        v = values[i]
        while top > 0 and values[stack[top - 1]] >= v:
            top -= 1
            p += 1  # 0-bit
        stack[top] = i
        top += 1
        out[p] = 1
        p += 1
    return out[:p]


stack_bits = jit(_stack_bits_loop)


def _excess_blocks_np(words, nbits):
    bits = unpack_bits(words, nbits).astype(np.int64)
    excess = np.cumsum(2 * bits - 1)
    nblocks = (nbits + EXCESS_BLOCK - 1) // EXCESS_BLOCK
    padded = np.full(nblocks * EXCESS_BLOCK, np.iinfo(np.int64).max, dtype=np.int64)
    padded[:nbits] = excess
    return padded.reshape(nblocks, EXCESS_BLOCK).min(axis=1).astype(np.int32)


def _excess_blocks_loop(words, nbits):
    nblocks = (nbits + EXCESS_BLOCK - 1) // EXCESS_BLOCK
    bmin = np.zeros(nblocks, dtype=np.int32)
    e = 0
    for b in range(nblocks):
        best = 1 << 30
        stop = min((b + 1) * EXCESS_BLOCK, nbits)
        for p in range(b * EXCESS_BLOCK, stop):
            if get_bit(words, p):
                e += 1
            else:
                e -= 1
            if e < best:
                best = e
        bmin[b] = best
    return bmin


excess_blocks = jit(_excess_blocks_loop) if USE_NUMBA else _excess_blocks_np


def _sparse_np(bmin):
    nb = bmin.shape[0]
    levels = max(1, int(nb).bit_length())
    table = np.zeros((levels, nb), dtype=np.int32)
    table[0] = np.arange(nb, dtype=np.int32)
    for lev in range(1, levels):
        half = 1 << (lev - 1)
        span = nb - (1 << lev) + 1
        if span <= 0:
            break
        a = table[lev - 1, :span]
        b = table[lev - 1, half : half + span]
        table[lev, :span] = np.where(bmin[b] <= bmin[a], b, a)
    return table


def _sparse_loop(bmin):
    nb = bmin.shape[0]
    levels = 1
    while (1 << levels) <= nb:
        levels += 1
    table = np.zeros((levels, nb), dtype=np.int32)
    for j in range(nb):
        table[0, j] = j
    for lev in range(1, levels):
        half = 1 << (lev - 1)
        for j in range(nb - (1 << lev) + 1):
            a = table[lev - 1, j]
            b = table[lev - 1, j + half]
            table[lev, j] = b if bmin[b] <= bmin[a] else a
    return table


sparse_table = jit(_sparse_loop) if USE_NUMBA else _sparse_np


@jit
def _excess_at(words, sup, sub, p):
    return 2 * rank1(words, sup, sub, p + 1) - (p + 1)


def _byte_tables():
    # per byte (bits LSB first): excess delta, min prefix excess, last argmin
    delta = np.zeros(256, dtype=np.int64)
    low = np.zeros(256, dtype=np.int64)
    at = np.zeros(256, dtype=np.int64)
    for b in range(256):
        e, best, pos = 0, 9, 0
        for t in range(8):
            e += 1 if (b >> t) & 1 else -1
            if e <= best:
                best, pos = e, t
        delta[b], low[b], at[b] = e, best, pos
    return delta, low, at


_BYTE_DELTA, _BYTE_LOW, _BYTE_AT = _byte_tables()


@jit
def _scan_min(words, start, stop, e_start):
    # minimum excess over [start, stop] and its last position
    best = e_start
    pos = start
    e = e_start
    p = start + 1
    while p <= stop and (p & 7):
        if (words[p >> 6] >> np.uint64(p & 63)) & _ONE:
            e += 1
        else:
            e -= 1
        if e <= best:
            best = e
            pos = p
        p += 1
    while p + 7 <= stop:
        b = np.int64((words[p >> 6] >> np.uint64(p & 63)) & np.uint64(255))
        if e + _BYTE_LOW[b] <= best:
            best = e + _BYTE_LOW[b]
            pos = p + _BYTE_AT[b]
        e += _BYTE_DELTA[b]
        p += 8
    while p <= stop:
        if (words[p >> 6] >> np.uint64(p & 63)) & _ONE:
            e += 1
        else:
            e -= 1
        if e <= best:
            best = e
            pos = p
        p += 1
    return best, pos


@jit
def _min_excess(bp, a, b, ea):
    words, sup, sub, nbits, bmin, table = bp
    ba = a // EXCESS_BLOCK
    bb = b // EXCESS_BLOCK
    if bb - ba <= 1:
        return _scan_min(words, a, b, ea)
    best, pos = _scan_min(words, a, ba * EXCESS_BLOCK + EXCESS_BLOCK - 1, ea)
    x = ba + 1
    y = bb - 1
    lev = 0
    while (1 << (lev + 1)) <= y - x + 1:
        lev += 1
    c1 = table[lev, x]
    c2 = table[lev, y - (1 << lev) + 1]
    mb = c2 if bmin[c2] <= bmin[c1] else c1
    mid_block = -1
    if bmin[mb] <= best:
        best = np.int64(bmin[mb])
        mid_block = mb
    start = bb * EXCESS_BLOCK
    m3, p3 = _scan_min(words, start, b, _excess_at(words, sup, sub, start))
    if m3 <= best:
        return m3, p3
    if mid_block >= 0:
        s = mid_block * EXCESS_BLOCK
        _, pos = _scan_min(words, s, s + EXCESS_BLOCK - 1, _excess_at(words, sup, sub, s))
    return best, pos


@jit
def rmq_query(bp, i, j):
    """Rightmost argmin of the encoded values over [i, j] (0-based)."""
    words, sup, sub = bp[0], bp[1], bp[2]
    pi = select1(words, sup, sub, i + 1)
    pj = select1(words, sup, sub, j + 1)
    ei = _excess_at(words, sup, sub, pi)
    mu, q = _min_excess(bp, pi, pj, ei)
    if mu == ei:
        return i
    return rank1(words, sup, sub, q + 1)


@jit
def rmq_query_batch(bp, lo, hi):
    out = np.empty(lo.shape[0], dtype=np.int64)
    for t in range(lo.shape[0]):
        out[t] = rmq_query(bp, lo[t], hi[t])
    return out


# ---------------------------------------------------------------------------
# wavelet matrix over small integer codes
# ---------------------------------------------------------------------------


@jit
def wm_rank(wm, c, p):
    """Occurrences of code c in positions [0, p)."""
    words, sup, sub, zeros = wm
    nlev = words.shape[0]
    s = 0
    e = p
    for lev in range(nlev):
        if (c >> (nlev - 1 - lev)) & 1:
            s = np.int64(zeros[lev]) + rank1(words[lev], sup[lev], sub[lev], s)
            e = np.int64(zeros[lev]) + rank1(words[lev], sup[lev], sub[lev], e)
        else:
            s = s - rank1(words[lev], sup[lev], sub[lev], s)
            e = e - rank1(words[lev], sup[lev], sub[lev], e)
    return e - s


@jit
def wm_select(wm, c, k):
    """Position of the k-th occurrence (1-based) of code c."""
    words, sup, sub, zeros = wm
    nlev = words.shape[0]
    s = 0
    for lev in range(nlev):
        if (c >> (nlev - 1 - lev)) & 1:
            s = np.int64(zeros[lev]) + rank1(words[lev], sup[lev], sub[lev], s)
        else:
            s = s - rank1(words[lev], sup[lev], sub[lev], s)
    pos = s + k - 1
    for lev in range(nlev - 1, -1, -1):
        if (c >> (nlev - 1 - lev)) & 1:
            pos = select1(words[lev], sup[lev], sub[lev], pos - np.int64(zeros[lev]) + 1)
        else:
            pos = select0(words[lev], sup[lev], sub[lev], pos + 1)
    return pos


@jit
def wm_access(wm, p):
    words, sup, sub, zeros = wm
    nlev = words.shape[0]
    c = 0
    for lev in range(nlev):
        bit = get_bit(words[lev], p)
        c = (c << 1) | bit
        if bit:
            p = np.int64(zeros[lev]) + rank1(words[lev], sup[lev], sub[lev], p)
        else:
            p = p - rank1(words[lev], sup[lev], sub[lev], p)
    return c


# ---------------------------------------------------------------------------
# Wheeler navigation; nav = (out_bv, in_bv, label_bv, wm, cedge)
# ---------------------------------------------------------------------------


@jit
def label_code(nav, i):
    return bv_rank1(nav[2], i + 1) - 1


@jit
def _first_out(nav, i):
    return bv_select1(nav[0], i + 1) - i


@jit
def _out_owner(nav, g):
    return bv_rank1(nav[0], bv_select0(nav[0], g + 1)) - 1


@jit
def _first_in(nav, i):
    return bv_select1(nav[1], i + 1) - i


@jit
def _in_owner(nav, g):
    return bv_rank1(nav[1], bv_select0(nav[1], g + 1)) - 1


@jit
def _source_of_in_edge(nav, c, g):
    t = g - np.int64(nav[4][c])
    return _out_owner(nav, wm_select(nav[3], c, t + 1))


@jit
def pred_min(nav, i):
    return _source_of_in_edge(nav, label_code(nav, i), _first_in(nav, i))


@jit
def pred_max(nav, i):
    return _source_of_in_edge(nav, label_code(nav, i), _first_in(nav, i + 1) - 1)


@jit
def forward(nav, r, s, c):
    """States labelled c with a predecessor in [r, s]; (-1, -1) when empty."""
    cedge = nav[4]
    if c < 0 or c >= cedge.shape[0] - 1:
        return -1, -1
    lo = _first_out(nav, r)
    hi = _first_out(nav, s + 1)
    a = wm_rank(nav[3], c, lo)
    b = wm_rank(nav[3], c, hi)
    if a >= b:
        return -1, -1
    base = np.int64(cedge[c])
    return _in_owner(nav, base + a), _in_owner(nav, base + b - 1)


@jit
def out_degree(nav, i):
    return _first_out(nav, i + 1) - _first_out(nav, i)


@jit
def out_label(nav, i, t):
    return wm_access(nav[3], _first_out(nav, i) + t)


# ---------------------------------------------------------------------------
# sampled LCP access; smp = (sample_bv, star, bp, mode, infinity)
# mode 0: full LCP, entries 2..2n; mode 1: odd entries only, indices 2..n
# ---------------------------------------------------------------------------


@jit
def lcp_parent(nav, bp, mode, i):
    """Entry whose value this entry extends by one, or -1."""
    if mode == 1:
        if label_code(nav, i - 2) != label_code(nav, i - 1):
            return -1
        lo = pred_max(nav, i - 2) + 2
        hi = pred_min(nav, i - 1) + 1
        return rmq_query(bp, lo - 2, hi - 2) + 2
    if i & 1:
        t = (i + 1) >> 1  # 1-based state
        if label_code(nav, t - 2) != label_code(nav, t - 1):
            return -1
        k = pred_max(nav, t - 2) + 1
        k2 = pred_min(nav, t - 1) + 1
        return rmq_query(bp, 2 * k + 1 - 2, 2 * k2 - 1 - 2) + 2
    t = i >> 1
    k = pred_min(nav, t - 1) + 1
    k2 = pred_max(nav, t - 1) + 1
    return rmq_query(bp, 2 * k - 2, 2 * k2 - 2) + 2


@jit
def lcp_parents(nav, bp, mode, count):
    out = np.empty(count, dtype=np.int64)
    for x in range(count):
        p = lcp_parent(nav, bp, mode, x + 2)
        out[x] = p - 2 if p >= 0 else -1
    return out


@jit
def lcp_access(nav, smp, i):
    """Value of entry i and the number of recursive calls spent on it."""
    sbv, star, bp, mode, inf = smp
    cap = 16
    visited = np.empty(cap, dtype=np.int64)
    nvis = 0
    cur = i
    inc = 0
    calls = 0
    while True:
        calls += 1
        if nvis == cap:
            grown = np.empty(2 * cap, dtype=np.int64)
            grown[:cap] = visited
            visited = grown
            cap *= 2
        visited[nvis] = cur
        nvis += 1
        x = cur - 2
        if (sbv[0][x >> 6] >> np.uint64(x & 63)) & _ONE:
            val = np.int64(star[bv_rank1(sbv, x)])
            break
        j = lcp_parent(nav, bp, mode, cur)
        if j < 0:
            val = 0
            break
        seen = False
        for q in range(nvis):
            if visited[q] == j:
                seen = True
                break
        if seen:
            return inf, calls
        inc += 1
        cur = j
    if val >= inf:
        return inf, calls
    return min(val + inc, inf), calls


@jit
def lcp_access_batch(nav, smp, entries):
    vals = np.empty(entries.shape[0], dtype=np.int64)
    calls = np.empty(entries.shape[0], dtype=np.int64)
    for t in range(entries.shape[0]):
        v, c = lcp_access(nav, smp, entries[t])
        vals[t] = v
        calls[t] = c
    return vals, calls


# ---------------------------------------------------------------------------
# sampling over a parent-pointer graph (parent[v] = -1 when undefined)
# ---------------------------------------------------------------------------


@jit
def sample_chains(parent, h):
    """Chain-disjoint sampling; a single increasing scan suffices because
    rejected candidates can never become eligible once U only grows."""
    m = parent.shape[0]
    marked = np.zeros(m, dtype=np.bool_)
    chosen = np.zeros(m, dtype=np.bool_)
    picked = np.zeros(m, dtype=np.bool_)
    chain = np.empty(h, dtype=np.int64)
    for v in range(m):
        # an entry that is its own parent is answered by the cycle check in
        # one call; it only qualifies at h = 1 and is never worth a sample
        ok = parent[v] != v
        x = v
        for t in range(h if ok else 0):
            if t > 0:
                x = parent[x]
                if x < 0:
                    ok = False
                    break
            if marked[x]:
                ok = False
                break
            for q in range(t):
                if chain[q] == x:
                    ok = False
                    break
            if not ok:
                break
            chain[t] = x
        if ok:
            picked[v] = True
            chosen[chain[h - 1]] = True
            for t in range(h):
                marked[chain[t]] = True
    return chosen, picked


@jit
def first_uncovered(parent, chosen, h):
    """First node that access cannot resolve within 2h-1 calls: no sampled
    or parentless node on its chain and no repeated parent; -1 if none."""
    m = parent.shape[0]
    limit = 2 * h - 1
    chain = np.empty(limit, dtype=np.int64)
    for v in range(m):
        x = v
        covered = False
        for t in range(limit):
            chain[t] = x
            p = parent[x]
            if chosen[x] or p < 0:
                covered = True
                break
            for q in range(t + 1):
                if chain[q] == p:
                    covered = True
                    break
            if covered:
                break
            x = p
        if not covered:
            return v
    return -1


# ---------------------------------------------------------------------------
# quadratic reference LCP: walk min/max predecessor chains pairwise. A pair
# of stream positions that repeats after matching characters means the two
# streams agree forever; Brent's power-of-two checkpoints find such a repeat
# without waiting for the 3n cap.
# ---------------------------------------------------------------------------


def _full_lcp_loop(lam, pmin, pmax, cap):
    n = lam.shape[0]
    out = np.empty(2 * n - 1, dtype=np.int64)
    for idx in range(2 * n - 1):
        entry = idx + 2
        if entry & 1:
            t = (entry + 1) // 2 - 1
            x = t - 1
            y = t
            fx = pmax
            fy = pmin
        else:
            t = entry // 2 - 1
            x = t
            y = t
            fx = pmin
            fy = pmax
        length = 0
        sx = x
        sy = y
        power = 1
        since = 0
        while length < cap and lam[x] == lam[y]:
            length += 1
            x = fx[x]
            y = fy[y]
            if x == sx and y == sy:
                length = cap
                break
            since += 1
            if since == power:
                sx = x
                sy = y
                power *= 2
                since = 0
        out[idx] = length
    return out


def _full_lcp_np(lam, pmin, pmax, cap):
    n = lam.shape[0]
    entries = np.arange(2, 2 * n + 1)
    odd = (entries & 1).astype(bool)
    state = np.where(odd, (entries + 1) // 2 - 1, entries // 2 - 1)
    x = np.where(odd, state - 1, state)
    y = state.copy()
    x_max = odd.copy()  # odd: left stream follows pmax, right follows pmin
    out = np.zeros(entries.shape[0], dtype=np.int64)
    active = np.arange(entries.shape[0])
    sx = x.copy()
    sy = y.copy()
    checkpoint = 1
    for step in range(1, cap + 1):
        if active.size == 0:
            break
        same = lam[x[active]] == lam[y[active]]
        active = active[same]
        out[active] += 1
        xa = x[active]
        ya = y[active]
        xm = x_max[active]
        x[active] = np.where(xm, pmax[xa], pmin[xa])
        y[active] = np.where(xm, pmin[ya], pmax[ya])
        loop = (x[active] == sx[active]) & (y[active] == sy[active])
        if loop.any():
            out[active[loop]] = cap
            active = active[~loop]
        if step == checkpoint:
            sx[active] = x[active]
            sy[active] = y[active]
            checkpoint *= 2
    return out


full_lcp = jit(_full_lcp_loop) if USE_NUMBA else _full_lcp_np
