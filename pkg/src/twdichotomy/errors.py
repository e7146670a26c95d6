"""Exception types shared across the package."""

from __future__ import annotations


class ContractError(ValueError):
    """An operation was called with arguments violating its precondition."""


class SpecError(ValueError):
    """A generator spec string or parameter set is invalid."""


class GraphParseError(ValueError):
    """Malformed graph input.

    ``offset`` is a byte offset (graph6) and ``line`` a 1-based line number
    (edge lists); whichever does not apply is ``None``.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        where = []
        if offset is not None:
            where.append(f"byte {offset}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of node expansions before finishing.

    This is an inconclusive outcome and is never reported as "not found".
    ``upper``/``lower`` carry the best bounds known when the search stopped,
    for searches that maintain them.
    """

    def __init__(self, message: str = "search budget exhausted", *,
                 upper: int | None = None, lower: int | None = None):
        super().__init__(message)
        self.upper = upper
        self.lower = lower
