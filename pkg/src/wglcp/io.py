"""Text formats and the binary index container.

Edge lists::

    n e sigma
    src dst label        (e lines, 1-based states in Wheeler order)
    finals: i1 i2 ...

Strings files hold one A/C/G/T sequence per line. The container starts with
the 6-byte magic ``WGLCP1`` and a fixed little-endian header, followed by
named, length-prefixed array sections; readers skip unknown sections.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .debruijn import DNA, PAD, DeBruijnIndex
from .errors import BuildError, ParseError, WglcpError
from .lcp_oracle import build_full_lcp
from .lcp_sampled import PlainLcp, SampledLcp, _EmptyRmq
from .succinct import BitArray, Rmq, WaveletMatrix
from .wheeler import WheelerDfa, validate

MAGIC = b"WGLCP1"
VERSION = 1
_HEADER = struct.Struct("<6sHBBQQIIIQBI")
KIND_WDFA, KIND_DBG = 0, 1
MODE_SAMPLED, MODE_BASELINE = 0, 1
_LAYOUT = {"full": 0, "bar": 1}


class FormatError(WglcpError, ValueError):
    """A container that is truncated, corrupt or of an unknown version."""


# -- text formats ---------------------------------------------------------


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int, str]], list[int]]:
    rows = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    rows = [(no, line) for no, line in rows if line]
    if not rows:
        raise ParseError(1, "empty input, expected header 'n e sigma'")
    no, head = rows[0]
    parts = head.split()
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise ParseError(no, f"header must be three integers 'n e sigma', got {head!r}")
    n, e, sigma = map(int, parts)
    if n < 1:
        raise ParseError(no, "n must be at least 1")
    body = rows[1:]
    if len(body) < e:
        last = body[-1][0] if body else no
        raise ParseError(last, f"expected {e} edge lines, found {len(body)}")
    edges = []
    for no, line in body[:e]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(no, f"edge line must be 'src dst label', got {line!r}")
        s, d, c = parts
        if not (s.isdigit() and d.isdigit()):
            raise ParseError(no, f"state indices must be integers, got {s!r} {d!r}")
        s, d = int(s), int(d)
        for v in (s, d):
            if not 1 <= v <= n:
                raise ParseError(no, f"state {v} outside [1, {n}]")
        if len(c) != 1 or not c.isprintable():
            raise ParseError(no, f"label must be one visible character, got {c!r}")
        edges.append((s, d, c))
    rest = body[e:]
    if not rest:
        last = body[-1][0] if body else no
        raise ParseError(last + 1, "missing 'finals:' line")
    no, line = rest[0]
    if not line.startswith("finals:"):
        raise ParseError(no, f"expected 'finals:' line, got {line!r}")
    finals = []
    for tok in line[len("finals:"):].split():
        if not tok.isdigit() or not 1 <= int(tok) <= n:
            raise ParseError(no, f"final state {tok!r} is not an index in [1, {n}]")
        finals.append(int(tok))
    if len(rest) > 1:
        raise ParseError(rest[1][0], "unexpected content after 'finals:' line")
    labels = {c for _, _, c in edges} - {"#"}
    if len(labels) != sigma:
        raise ParseError(rows[0][0], f"header says sigma={sigma} but edges use {len(labels)} labels")
    return n, edges, finals


def read_edge_list(path: str | Path):
    return parse_edge_list(Path(path).read_text())


def format_edge_list(d: WheelerDfa) -> str:
    edges = [(s, t, c) for s, t, c in d.edges() if not (s == t == 1 and c == d.initial_symbol)]
    lines = [f"{d.n} {len(edges)} {d.sigma}"]
    lines += [f"{s} {t} {c}" for s, t, c in edges]
    lines.append("finals: " + " ".join(map(str, d.final_states())))
    return "\n".join(lines) + "\n"


def parse_strings(text: str) -> list[str]:
    out = []
    for no, line in enumerate(text.splitlines(), start=1):
        w = line.strip()
        if not w:
            continue
        bad = set(w) - set(DNA)
        if bad:
            raise ParseError(no, f"characters {sorted(bad)} outside {DNA}")
        out.append(w)
    if not out:
        raise ParseError(1, "no sequences in input")
    return out


def read_strings(path: str | Path) -> list[str]:
    return parse_strings(Path(path).read_text())


# -- in-memory index ----------------------------------------------------------


@dataclass
class WdfaIndex:
    """A Wheeler DFA with its (sampled or plain) LCP structure."""

    dfa: WheelerDfa
    lcp: SampledLcp | PlainLcp

    @property
    def mode(self) -> str:
        return "sampled" if isinstance(self.lcp, SampledLcp) else "baseline"

    @property
    def h(self) -> int:
        return self.lcp.h

    def size_report(self) -> dict[str, int]:
        rep = dict(self.dfa.size_report())
        rep.update(self.lcp.size_report())
        return rep


def build_wdfa_index(n, edges, finals=(), h="auto-linear", mode="sampled") -> WdfaIndex:
    d = validate(n, edges, finals)
    full = build_full_lcp(d)
    if mode == "baseline":
        return WdfaIndex(d, PlainLcp(d, full.values, full.infinity))
    if mode != "sampled":
        raise BuildError(f"unknown mode {mode!r}")
    return WdfaIndex(d, SampledLcp.build(d, full, h))


# -- container ------------------------------------------------------------


def _bits(sections: dict, name: str, b: BitArray) -> None:
    sections[name] = b.words
    sections[name + ".n"] = np.array([b.length], dtype=np.uint64)


def _unbits(sections: dict, name: str) -> BitArray:
    nbits = int(sections[name + ".n"][0])
    return BitArray.from_words(sections[name], nbits)


def _dfa_sections(d: WheelerDfa, sections: dict) -> None:
    sections["symbols"] = np.array([ord(c) for c in d.symbols], dtype=np.uint32)
    _bits(sections, "out", d.out_bits)
    _bits(sections, "in", d.in_bits)
    _bits(sections, "boundary", d.boundary)
    _bits(sections, "finals", d.finals)
    sections["labels.words"] = d.out_labels.words
    sections["labels.zeros"] = d.out_labels.zeros
    sections["cedge"] = d.cedge


def _dfa_from(sections: dict, n: int, e: int) -> WheelerDfa:
    symbols = tuple(chr(int(c)) for c in sections["symbols"])
    labels = WaveletMatrix.from_words(sections["labels.words"], sections["labels.zeros"], e)
    return WheelerDfa(
        n, symbols, _unbits(sections, "out"), _unbits(sections, "in"),
        _unbits(sections, "boundary"), labels, sections["cedge"],
        _unbits(sections, "finals"), e,
    )


def _lcp_sections(lcp, sections: dict) -> None:
    if isinstance(lcp, SampledLcp):
        _bits(sections, "C", lcp.sampled)
        sections["lcp_star"] = lcp.lcp_star
        if lcp.rmq.length:
            _bits(sections, "rmq", lcp.rmq.bits)
    else:
        sections["lcp_plain"] = lcp.values


def _lcp_from(sections: dict, d: WheelerDfa, mode: int, layout: str, h: int, inf: int):
    if mode == MODE_BASELINE:
        return PlainLcp(d, sections["lcp_plain"], inf, layout)
    count = 2 * d.n - 1 if layout == "full" else d.n - 1
    if count:
        bits = _unbits(sections, "rmq")
        rmq = Rmq.from_bits(bits.words, bits.length, count, 2)
    else:
        rmq = _EmptyRmq()
    return SampledLcp(d, h, _unbits(sections, "C"), sections["lcp_star"], rmq, inf, layout)


def dumps(index: WdfaIndex | DeBruijnIndex) -> bytes:
    sections: dict[str, np.ndarray] = {}
    d = index.dfa
    _dfa_sections(d, sections)
    _lcp_sections(index.lcp, sections)
    kind = KIND_DBG if isinstance(index, DeBruijnIndex) else KIND_WDFA
    mode = MODE_SAMPLED if isinstance(index.lcp, SampledLcp) else MODE_BASELINE
    k = index.k if kind == KIND_DBG else 0
    head = _HEADER.pack(
        MAGIC, VERSION, kind, mode, d.n, d.e, d.sigma, k, index.lcp.h,
        index.lcp.infinity, _LAYOUT[index.lcp.mode], len(sections),
    )
    out = [head]
    for name, arr in sections.items():
        out.append(_section(name, np.asarray(arr)))
    return b"".join(out)


def _section(name: str, arr: np.ndarray) -> bytes:
    arr = np.ascontiguousarray(arr.astype(arr.dtype.newbyteorder("<"), copy=False))
    key = name.encode()
    dt = arr.dtype.str.encode()
    meta = struct.pack("<H", len(key)) + key + struct.pack("<B", len(dt)) + dt
    meta += struct.pack("<B", arr.ndim) + struct.pack(f"<{arr.ndim}Q", *arr.shape)
    payload = arr.tobytes()
    return meta + struct.pack("<Q", len(payload)) + payload


def loads(blob: bytes) -> WdfaIndex | DeBruijnIndex:
    if len(blob) < _HEADER.size or blob[:6] != MAGIC:
        raise FormatError("not a WGLCP1 index container")
    (_, version, kind, mode, n, e, sigma, k, h, inf, layout, nsec) = _HEADER.unpack_from(blob)
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    pos = _HEADER.size
    sections = {}
    try:
        for _ in range(nsec):
            (klen,) = struct.unpack_from("<H", blob, pos)
            pos += 2
            name = blob[pos:pos + klen].decode()
            pos += klen
            (dlen,) = struct.unpack_from("<B", blob, pos)
            pos += 1
            dtype = np.dtype(blob[pos:pos + dlen].decode())
            pos += dlen
            (ndim,) = struct.unpack_from("<B", blob, pos)
            pos += 1
            shape = struct.unpack_from(f"<{ndim}Q", blob, pos)
            pos += 8 * ndim
            (size,) = struct.unpack_from("<Q", blob, pos)
            pos += 8
            if pos + size > len(blob):
                raise FormatError(f"section {name!r} is truncated")
            arr = np.frombuffer(blob, dtype=dtype, count=size // dtype.itemsize, offset=pos)
            sections[name] = arr.reshape(shape).astype(dtype.newbyteorder("="))
            pos += size
    except (struct.error, UnicodeDecodeError, ValueError, TypeError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"corrupt container: {exc}") from None
    try:
        d = _dfa_from(sections, n, e)
        lcp = _lcp_from(sections, d, mode, "bar" if layout == 1 else "full", h, inf)
    except KeyError as exc:
        raise FormatError(f"container lacks section {exc}") from None
    if d.sigma != sigma:
        raise FormatError("header alphabet size disagrees with the symbol table")
    if kind == KIND_DBG:
        if d.initial_symbol != PAD:
            raise FormatError("de Bruijn container without '$' root")
        return DeBruijnIndex(k, d, lcp)
    return WdfaIndex(d, lcp)


def save(index, path: str | Path) -> int:
    blob = dumps(index)
    Path(path).write_bytes(blob)
    return len(blob)


def load(path: str | Path):
    return loads(Path(path).read_bytes())
