"""Command line entry point: ``wglcp build-wdfa | build-dbg | query | bench``.

Exit codes: 0 success, 2 validation failure, 3 query error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as wio
from .bench import sweep, to_csv
from .debruijn import DeBruijnIndex, VoNode
from .errors import (
    BuildError, InputError, OrderError, ParameterError, ParseError, RangeError, WheelerViolation,
)
from .lcp_oracle import build_full_lcp
from .lcp_sampled import resolve_h
from .matching import matching_statistics
from .random_graphs import random_wheeler_dfa
from .wheeler import validate

EXIT_OK, EXIT_INVALID, EXIT_QUERY, EXIT_IO = 0, 2, 3, 4


class QueryError(Exception):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")


def _h_arg(text: str) -> int | str:
    if text in ("auto-linear", "auto-loglog"):
        return text
    try:
        h = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"h must be an integer, auto-linear or auto-loglog, got {text!r}")
    if h < 1:
        raise argparse.ArgumentTypeError("h must be >= 1")
    return h


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("values must be positive integers")
    return out


def _report(index, nbytes: int, out) -> None:
    d = index.dfa
    lines = [f"n\t{d.n}", f"e\t{d.e}", f"sigma\t{d.sigma}"]
    if isinstance(index, DeBruijnIndex):
        lines.append(f"k\t{index.k}")
    lines += [f"mode\t{index.mode}", f"h\t{index.lcp.h}", f"popcount_C\t{index.lcp.popcount()}"]
    rep = index.size_report()
    for name, bits in rep.items():
        lines.append(f"bits.{name}\t{bits}")
    lines.append(f"bits.total\t{sum(rep.values())}")
    lines.append(f"file_bytes\t{nbytes}")
    print("\n".join(lines), file=out)


# -- build ------------------------------------------------------------------


def cmd_build_wdfa(args, out) -> int:
    n, edges, finals = wio.read_edge_list(args.input)
    index = wio.build_wdfa_index(n, edges, finals, args.h, args.mode)
    _report(index, wio.save(index, args.output), out)
    return EXIT_OK


def cmd_build_dbg(args, out) -> int:
    strings = wio.read_strings(args.input)
    index = DeBruijnIndex.build(strings, args.k, args.mode)
    _report(index, wio.save(index, args.output), out)
    return EXIT_OK


# -- query ------------------------------------------------------------------


def cmd_lcp(index, args, out) -> int:
    lcp = index.lcp
    if args.all:
        vals = lcp.access_all()[0]
        print("\n".join(lcp.render(int(v)) for v in vals), file=out)
        return EXIT_OK
    if not lcp.lo <= args.i <= lcp.hi:
        raise QueryError(f"entry {args.i} outside [{lcp.lo}, {lcp.hi}]")
    print(lcp.render(lcp.access(args.i)), file=out)
    return EXIT_OK


def cmd_ms(index, args, out) -> int:
    if isinstance(index, DeBruijnIndex):
        raise QueryError("matching statistics need a Wheeler DFA index, not a de Bruijn index")
    ms = matching_statistics(index.lcp, index.dfa, args.pattern)
    print(" ".join(map(str, ms)), file=out)
    return EXIT_OK


def _int_operand(tok: list[str], no: int) -> int:
    if len(tok) != 2:
        raise QueryError(f"'{tok[0]}' takes one integer operand", no)
    try:
        return int(tok[1])
    except ValueError:
        raise QueryError(f"'{tok[1]}' is not an integer", no) from None


def run_script(index: DeBruijnIndex, lines, out) -> None:
    cur: VoNode | None = None
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        op = tok[0]
        if op == "start":
            if len(tok) > 2:
                raise QueryError("'start' takes one k-mer suffix", no)
            suffix = tok[1] if len(tok) == 2 else ""
            cur = index.start(suffix)
            print(cur or "none", file=out)
            continue
        if op not in ("shorter", "longer", "forward", "backward"):
            raise QueryError(f"unknown command {op!r}", no)
        if cur is None:
            raise QueryError(f"'{op}' without a current node", no)
        try:
            if op == "shorter":
                cur = index.shorter(cur, _int_operand(tok, no))
                print(cur, file=out)
            elif op == "longer":
                groups = index.longer(cur, _int_operand(tok, no))
                cur = groups[0]
                print(" ".join(map(str, groups)), file=out)
            elif op == "forward":
                if len(tok) != 2 or len(tok[1]) != 1:
                    raise QueryError("'forward' takes one symbol", no)
                cur = index.forward(cur, tok[1])
                print(cur or "none", file=out)
            else:
                if len(tok) != 1:
                    raise QueryError("'backward' takes no operand", no)
                cur = index.backward(cur)
                print(cur, file=out)
        except (OrderError, RangeError) as exc:
            raise QueryError(str(exc), no) from None


def cmd_vo(index, args, out) -> int:
    if not isinstance(index, DeBruijnIndex):
        raise QueryError("vo needs a de Bruijn index")
    if args.script in (None, "-"):
        lines = sys.stdin.read().splitlines()
    else:
        lines = Path(args.script).read_text().splitlines()
    run_script(index, lines, out)
    return EXIT_OK


def cmd_query(args, out) -> int:
    index = wio.load(args.index)
    return args.query_fn(index, args, out)


# -- bench ------------------------------------------------------------------


def _bench_input(path: str):
    """(dfa, values, mode, infinity) from an index container or an edge list."""
    p = Path(path)
    with p.open("rb") as fh:
        magic = fh.read(len(wio.MAGIC))
    if magic == wio.MAGIC:
        index = wio.load(p)
        vals = index.lcp.access_all()[0]
        return index.dfa, vals, index.lcp.mode, index.lcp.infinity
    d = validate(*wio.read_edge_list(p))
    full = build_full_lcp(d)
    return d, full.values, "full", full.infinity


def cmd_bench(args, out) -> int:
    if not args.inputs and not args.random:
        raise ParameterError("bench needs at least one input or --random size")
    rows = []
    jobs = [_bench_input(p) for p in args.inputs]
    for j, n in enumerate(args.random or []):
        d = random_wheeler_dfa(n, args.sigma, seed=args.seed + j)
        full = build_full_lcp(d)
        jobs.append((d, full.values, "full", full.infinity))
    for d, vals, mode, inf in jobs:
        hs = args.h or [resolve_h("auto-linear", d.n, d.sigma)]
        rows += sweep(d, vals, hs, mode=mode, infinity=inf, repeats=args.repeats)
    text = to_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wglcp", description="Sampled LCP indexes over Wheeler DFAs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-wdfa", help="index a Wheeler DFA edge list")
    p.add_argument("input")
    p.add_argument("--h", type=_h_arg, default="auto-linear")
    p.add_argument("--mode", choices=("sampled", "baseline"), default="sampled")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_build_wdfa)

    p = sub.add_parser("build-dbg", help="index the de Bruijn graph of DNA strings")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("sampled", "baseline"), default="sampled")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_build_dbg)

    p = sub.add_parser("query", help="query an index container")
    p.add_argument("index")
    qs = p.add_subparsers(dest="query", required=True)
    q = qs.add_parser("lcp")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--i", type=int)
    g.add_argument("--all", action="store_true")
    q.set_defaults(query_fn=cmd_lcp)
    q = qs.add_parser("ms")
    q.add_argument("--pattern", required=True)
    q.set_defaults(query_fn=cmd_ms)
    q = qs.add_parser("vo")
    q.add_argument("--script", help="script file; stdin when omitted or '-'")
    q.set_defaults(query_fn=cmd_vo)
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("bench", help="space/time sweep over h, CSV output")
    p.add_argument("inputs", nargs="*", help="edge-list files or index containers")
    p.add_argument("--h", type=_int_list, help="comma-separated h values (default auto-linear)")
    p.add_argument("--random", type=_int_list, help="comma-separated sizes of random automata")
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except (WheelerViolation, ParseError, BuildError, InputError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (QueryError, RangeError, OrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUERY
    except (OSError, wio.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
