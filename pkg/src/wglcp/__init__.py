"""Sampled LCP arrays over Wheeler DFAs, matching statistics and
variable-order de Bruijn graph navigation."""

from ._kernels import BACKEND
from .debruijn import DeBruijnIndex, VoNode, build_dbg
from .errors import (
    BuildError, InputError, OrderError, ParameterError, ParseError, RangeError,
    Violation, WglcpError, WheelerViolation,
)
from .io import WdfaIndex, build_wdfa_index, dumps, load, loads, save
from .lcp_oracle import LcpArray, build_full_lcp
from .lcp_sampled import PlainLcp, SampledLcp
from .matching import matching_statistics, ms_oracle
from .succinct import BitArray, Rmq, WaveletMatrix
from .wheeler import WheelerDfa, validate

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BitArray", "BuildError", "DeBruijnIndex", "InputError", "LcpArray",
    "OrderError", "ParameterError", "ParseError", "PlainLcp", "RangeError", "Rmq",
    "SampledLcp", "Violation", "VoNode", "WaveletMatrix", "WdfaIndex", "WglcpError",
    "WheelerDfa", "WheelerViolation", "build_dbg", "build_full_lcp", "build_wdfa_index",
    "dumps", "load", "loads", "matching_statistics", "ms_oracle", "save", "validate",
]
