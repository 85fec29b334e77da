"""Exception hierarchy."""

from __future__ import annotations

from dataclasses import dataclass


class WglcpError(Exception):
    """Base class for every error raised by this package."""


class RangeError(WglcpError, IndexError):
    """A position, state or entry index outside its valid range."""


class BuildError(WglcpError, ValueError):
    """A structure cannot be constructed from the given input."""


class ParameterError(WglcpError, ValueError):
    """An invalid tuning parameter such as a sampling rate below 1."""


class OrderError(WglcpError, ValueError):
    """A variable-order navigation step asked for an impossible order."""


class InputError(WglcpError, ValueError):
    """Malformed user input (bad characters, empty string sets)."""


class ParseError(WglcpError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class WheelerViolation(WglcpError, ValueError):
    """The supplied order or edge set is not a Wheeler DFA."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:10])
        more = len(self.violations) - 10
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(lines)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}
