from pathlib import Path

import pytest

from wglcp.io import read_edge_list, read_strings
from wglcp.lcp_oracle import build_full_lcp
from wglcp.wheeler import validate

DATA = Path(__file__).parent / "data"

# Acceptance results are collected here and echoed in the terminal summary.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def example_dfa():
    n, edges, finals = read_edge_list(DATA / "example_dfa.txt")
    return validate(n, edges, finals)


@pytest.fixture(scope="session")
def example_full(example_dfa):
    return build_full_lcp(example_dfa)


@pytest.fixture(scope="session")
def example_strings():
    return read_strings(DATA / "example_strings.txt")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for no in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[no]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {no}: {detail}")
