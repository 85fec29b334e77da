import numpy as np
import pytest
from golden import EXAMPLE_LCP

from wglcp.errors import RangeError
from wglcp.lcp_oracle import (
    build_full_lcp, lcp_pair, max_string_stream, min_string_stream, verify_min_max_chain,
)
from wglcp.random_graphs import random_wheeler_dfa
from wglcp.wheeler import validate


def capped_walk(d):
    """Entries 2..2n by character-by-character comparison, capped at 3n."""
    cap = 3 * d.n
    out = []
    for i in range(1, d.n + 1):
        if i > 1:
            out.append(lcp_pair(max_string_stream(d, i - 1), min_string_stream(d, i), cap))
        out.append(lcp_pair(min_string_stream(d, i), max_string_stream(d, i), cap))
    return out


def test_example_values(example_full):
    f = example_full
    rendered = [f.render(i) for i in range(2, 33)]
    assert rendered == ["inf" if v is None else str(v) for v in EXAMPLE_LCP]
    assert f.infinity == 48 and f.is_infinite(2) and not f.is_infinite(3)


def test_streams(example_dfa):
    def take(it, k):
        return "".join(next(it) for _ in range(k))

    assert take(min_string_stream(example_dfa, 2), 4) == "a###"
    assert take(max_string_stream(example_dfa, 2), 4) == "aaaa"
    assert take(min_string_stream(example_dfa, 16), 6) == "lkjihf"
    with pytest.raises(RangeError):
        next(min_string_stream(example_dfa, 0))


def test_chain_order(example_dfa):
    assert verify_min_max_chain(example_dfa)


def test_odd_entries(example_full):
    assert list(example_full.odd_entries()) == [v for v in EXAMPLE_LCP[1::2]]


@pytest.mark.parametrize("seed", range(40))
def test_cycle_detection_matches_capped_walk(seed):
    rng = np.random.default_rng(seed)
    d = random_wheeler_dfa(int(rng.integers(1, 60)), int(rng.integers(1, 5)),
                           extra=float(rng.uniform(0, 2)), seed=seed)
    assert list(build_full_lcp(d).values) == capped_walk(d)
    assert verify_min_max_chain(d)


def test_finite_values_stay_below_bound():
    for seed in range(30):
        d = random_wheeler_dfa(200, 3, extra=1.5, seed=seed)
        v = build_full_lcp(d).values
        assert v.max() <= 3 * d.n
        finite = v[v < 3 * d.n]
        assert finite.size == 0 or finite.max() < 2 * d.n


def test_single_state():
    f = build_full_lcp(validate(1, []))
    assert len(f) == 1 and f.render(2) == "inf"


def test_range():
    f = build_full_lcp(validate(2, [(1, 2, "a")]))
    with pytest.raises(RangeError):
        f[5]
