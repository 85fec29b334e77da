import csv
import io
import struct

import numpy as np
import pytest
from golden import DBG_LCP_BAR, EXAMPLE_LCP

from wglcp import cli
from wglcp.debruijn import DeBruijnIndex
from wglcp.errors import ParseError
from wglcp.io import (
    MAGIC, FormatError, build_wdfa_index, dumps, format_edge_list, load, loads, parse_edge_list,
    parse_strings, read_edge_list, save,
)
from wglcp.matching import matching_statistics
from wglcp.random_graphs import random_wheeler_edges


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


# -- text formats -------------------------------------------------------------


def test_parse_example(data_dir):
    n, edges, finals = read_edge_list(data_dir / "example_dfa.txt")
    assert n == 16 and len(edges) == 19 and finals == [9, 10, 11, 16]
    assert edges[0] == (1, 2, "a")


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("2 1\n", 1),
    ("2 1 1\n1 2\nfinals:\n", 2),
    ("2 1 1\n1 3 a\nfinals:\n", 2),
    ("2 1 1\n1 x a\nfinals:\n", 2),
    ("2 1 1\n1 2 ab\nfinals:\n", 2),
    ("2 2 1\n1 2 a\n", 2),
    ("2 1 1\n1 2 a\n", 3),
    ("2 1 1\n1 2 a\nfinal 2\n", 3),
    ("2 1 1\n1 2 a\nfinals: 3\n", 3),
    ("2 1 1\n1 2 a\nfinals: 2\nextra\n", 4),
    ("2 1 2\n1 2 a\nfinals:\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_edge_list_round_trip(example_dfa):
    text = format_edge_list(example_dfa)
    n, edges, finals = parse_edge_list(text)
    assert build_wdfa_index(n, edges, finals).dfa.edges() == example_dfa.edges()


def test_parse_strings():
    assert parse_strings("ACG\n\nTT\n") == ["ACG", "TT"]
    with pytest.raises(ParseError) as exc:
        parse_strings("ACG\nACN\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_strings("\n\n")


# -- container ----------------------------------------------------------------


def _answers(index):
    d = index.dfa
    vals = list(index.lcp.access_all()[0])
    return vals, d.edges(), d.final_states(), index.lcp.h, index.lcp.popcount()


@pytest.mark.parametrize("mode", ["sampled", "baseline"])
def test_wdfa_round_trip(data_dir, mode):
    n, edges, finals = read_edge_list(data_dir / "example_dfa.txt")
    x = build_wdfa_index(n, edges, finals, 4, mode)
    y = loads(dumps(x))
    assert y.mode == mode
    assert _answers(x) == _answers(y)
    assert matching_statistics(y.lcp, y.dfa, "efhij") == matching_statistics(x.lcp, x.dfa, "efhij")
    assert y.size_report() == x.size_report()


@pytest.mark.parametrize("seed", range(6))
def test_random_round_trip(seed, tmp_path):
    n, edges, finals = random_wheeler_edges(int(80 + 40 * seed), 5, seed=seed)
    x = build_wdfa_index(n, edges, finals, seed + 1)
    save(x, tmp_path / "x.idx")
    y = load(tmp_path / "x.idx")
    assert _answers(x) == _answers(y)
    for r, s in [(1, n), (2, n // 2), (n // 3, n // 3)]:
        for c in y.dfa.symbols[1:]:
            assert y.dfa.forward_search(r, s, c) == x.dfa.forward_search(r, s, c)


@pytest.mark.parametrize("mode", ["sampled", "baseline"])
def test_dbg_round_trip(example_strings, mode):
    x = DeBruijnIndex.build(example_strings, 3, mode)
    y = loads(dumps(x))
    assert isinstance(y, DeBruijnIndex) and y.k == 3 and y.mode == mode
    assert y.nodes() == x.nodes()
    assert list(y.lcp_bar_all()) == DBG_LCP_BAR
    assert y.start("AC") == x.start("AC")
    assert y.longer(y.root(), 2) == x.longer(x.root(), 2)


def test_single_state_round_trip():
    x = build_wdfa_index(1, [], [])
    y = loads(dumps(x))
    assert y.lcp.popcount() == 0 and y.lcp.render(y.lcp.access(2)) == "inf"


def test_container_is_little_endian_with_magic(example_dfa):
    blob = dumps(build_wdfa_index(16, [e for e in example_dfa.edges() if e[2] != "#"], [9, 10, 11, 16]))
    assert blob[:6] == MAGIC
    assert struct.unpack_from("<H", blob, 6)[0] == 1


def test_corrupt_containers(example_strings):
    blob = dumps(DeBruijnIndex.build(example_strings, 3))
    with pytest.raises(FormatError):
        loads(b"NOTANINDEX" + blob)
    with pytest.raises(FormatError):
        loads(blob[:40])
    with pytest.raises(FormatError):
        loads(blob[:6] + b"\x09\x00" + blob[8:])
    with pytest.raises(FormatError):
        loads(blob[: len(blob) - 3])


# -- command line ---------------------------------------------------------------


@pytest.fixture(scope="module")
def built(tmp_path_factory, data_dir):
    tmp = tmp_path_factory.mktemp("idx")
    wdfa, dbg = tmp / "ex.idx", tmp / "dbg.idx"
    assert cli.main(["build-wdfa", str(data_dir / "example_dfa.txt"), "-o", str(wdfa)], out=io.StringIO()) == 0
    assert cli.main(["build-dbg", str(data_dir / "example_strings.txt"), "--k", "3", "-o", str(dbg)],
                    out=io.StringIO()) == 0
    return wdfa, dbg


def test_build_reports(data_dir, tmp_path):
    code, out = run(["build-wdfa", data_dir / "example_dfa.txt", "--h", "auto-linear", "-o", tmp_path / "a"])
    assert code == 0
    stats = dict(line.split("\t") for line in out.strip().splitlines())
    assert stats["n"] == "16" and stats["sigma"] == "12" and stats["h"] == "4"
    assert int(stats["popcount_C"]) <= 31 // 4
    assert int(stats["bits.total"]) == sum(int(v) for k, v in stats.items() if k.startswith("bits.") and k != "bits.total")
    code, out = run(["build-dbg", data_dir / "example_strings.txt", "--k", "3", "-o", tmp_path / "b"])
    stats = dict(line.split("\t") for line in out.strip().splitlines())
    assert code == 0 and stats["n"] == "11" and stats["h"] == "2" and stats["k"] == "3"


def test_build_options(data_dir, tmp_path):
    for h in ("auto-loglog", "1", "7"):
        assert run(["build-wdfa", data_dir / "example_dfa.txt", "--h", h, "-o", tmp_path / "a"])[0] == 0
    code, out = run(["build-wdfa", data_dir / "example_dfa.txt", "--mode", "baseline", "-o", tmp_path / "b"])
    assert code == 0 and "bits.values" in out
    with pytest.raises(SystemExit):
        run(["build-wdfa", data_dir / "example_dfa.txt", "--h", "0", "-o", tmp_path / "c"])


def test_query_lcp(built):
    wdfa, dbg = built
    assert run(["query", wdfa, "lcp", "--i", 26]) == (0, "4\n")
    assert run(["query", wdfa, "lcp", "--i", 2]) == (0, "inf\n")
    code, out = run(["query", wdfa, "lcp", "--all"])
    assert out.split() == ["inf" if v is None else str(v) for v in EXAMPLE_LCP]
    code, out = run(["query", dbg, "lcp", "--all"])
    assert out.split() == [str(v) for v in DBG_LCP_BAR]


def test_query_ms(built):
    wdfa, dbg = built
    assert run(["query", wdfa, "ms", "--pattern", "efh"]) == (0, "1 2 3\n")
    assert run(["query", dbg, "ms", "--pattern", "AC"])[0] == 3


def test_query_vo(built, monkeypatch, tmp_path):
    _, dbg = built
    script = "start AC\nforward G\nbackward\nforward T\nlonger 3\nshorter 2\nforward A\n"
    code, out = run(["query", dbg, "vo"], stdin=script, monkeypatch=monkeypatch)
    assert code == 0
    assert out.splitlines() == ["[4,5]@2", "[7,7]@3", "[4,5]@2", "[10,10]@3", "[10,10]@3", "[10,10]@2", "none"]
    f = tmp_path / "s.txt"
    f.write_text("start C\n\n# comment\nlonger 2\n")
    assert run(["query", dbg, "vo", "--script", f]) == (0, "[4,6]@1\n[4,5]@2 [6,6]@2\n")


@pytest.mark.parametrize("script, line", [
    ("start AC\njump 2\n", 2),
    ("forward A\n", 1),
    ("start AC\nshorter x\n", 2),
    ("start AC\nshorter 3\n", 2),
    ("start AC\nlonger\n", 2),
    ("start AC\nforward GT\n", 2),
    ("start\nbackward\n", 2),
    ("start AC\nbackward 1\n", 2),
])
def test_vo_script_errors(built, monkeypatch, capsys, script, line):
    _, dbg = built
    code, _ = run(["query", dbg, "vo"], stdin=script, monkeypatch=monkeypatch)
    assert code == 3
    assert f"line {line}:" in capsys.readouterr().err


def test_exit_codes(built, tmp_path, capsys):
    wdfa, _ = built
    assert run(["query", wdfa, "lcp", "--i", 99])[0] == 3
    assert run(["query", tmp_path / "missing.idx", "lcp", "--i", 2])[0] == 4
    bad = tmp_path / "bad.idx"
    bad.write_bytes(b"garbage")
    assert run(["query", bad, "lcp", "--i", 2])[0] == 4
    crossing = tmp_path / "cross.txt"
    crossing.write_text("3 2 2\n1 2 b\n1 3 a\nfinals:\n")
    assert run(["build-wdfa", crossing, "-o", tmp_path / "x"])[0] == 2
    assert "axiom1" in capsys.readouterr().err
    broken = tmp_path / "broken.txt"
    broken.write_text("3 2 2\n1 2 b\n")
    assert run(["build-wdfa", broken, "-o", tmp_path / "x"])[0] == 2
    dna = tmp_path / "dna.txt"
    dna.write_text("ACGX\n")
    assert run(["build-dbg", dna, "--k", "2", "-o", tmp_path / "x"])[0] == 2
    assert run(["build-wdfa", tmp_path / "nope.txt", "-o", tmp_path / "x"])[0] == 4
    assert run(["bench"])[0] == 2


def test_outputs_are_deterministic(data_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(["build-wdfa", data_dir / "example_dfa.txt", "-o", a])
    run(["build-wdfa", data_dir / "example_dfa.txt", "-o", b])
    assert a.read_bytes() == b.read_bytes()


def test_bench_csv(data_dir, built, tmp_path):
    wdfa, dbg = built
    out_csv = tmp_path / "bench.csv"
    code, _ = run(["bench", data_dir / "example_dfa.txt", wdfa, dbg, "--h", "1,2,4,8",
                   "--random", "120", "--repeats", "1", "-o", out_csv])
    assert code == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert list(rows[0]) == list(cli.sweep.__globals__["COLUMNS"])
    assert len(rows) == 4 * 4
    by_input = [rows[i:i + 4] for i in range(0, 16, 4)]
    for group in by_input:
        pops = [int(r["popcount_C"]) for r in group]
        assert pops == sorted(pops, reverse=True)
        for r in group:
            h = int(r["h"])
            assert float(r["mean_access_hops"]) <= 2 * h - 1
    # an edge list and the container built from it sweep identically
    key = ("h", "popcount_C", "bits_samples", "bits_total")
    assert [[r[c] for c in key] for r in by_input[0]] == [[r[c] for c in key] for r in by_input[1]]
    code, text = run(["bench", "--random", "64", "--repeats", "1"])
    assert code == 0 and text.startswith("n,sigma,h,")


def test_bench_samples_bounded():
    from wglcp.bench import sweep
    from wglcp.lcp_oracle import build_full_lcp
    from wglcp.random_graphs import random_wheeler_dfa

    d = random_wheeler_dfa(500, 4, seed=1)
    f = build_full_lcp(d)
    for row in sweep(d, f.values, [1, 2, 3, 4, 8], repeats=1):
        h = row["h"]
        assert row["bits_samples"] <= -(-(2 * d.n - 1) // h) * row["_word_width"]
        assert row["_max_hops"] <= 2 * h - 1
        assert np.isfinite(row["mean_access_ns"])
