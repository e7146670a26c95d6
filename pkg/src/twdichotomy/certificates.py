"""Witness objects returned by searches and extraction procedures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import ContractError
from .graph import Edge, Graph


@dataclass(frozen=True)
class Violation:
    """First failed condition of a check, with the vertices involved."""

    condition: str
    vertices: tuple = ()
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.condition}: {list(self.vertices)}"
        return f"{s} ({self.detail})" if self.detail else s

    def to_json(self) -> dict[str, Any]:
        return {"condition": self.condition, "vertices": list(self.vertices), "detail": self.detail}


@dataclass(frozen=True, eq=True)
class Embedding:
    """Injective map ``mapping[i]`` = host image of pattern vertex ``i``.

    ``mode`` is ``"induced"`` or ``"subgraph"``.
    """

    pattern: Graph
    mapping: tuple[int, ...]
    mode: str = "induced"

    def to_json(self) -> dict[str, Any]:
        return {"pattern_n": self.pattern.n, "map": list(self.mapping), "paths": [],
                "mode": self.mode, "pattern_edges": [list(e) for e in self.pattern.edges()]}


@dataclass(frozen=True, eq=True)
class SubdivisionModel:
    """A subdivision of ``pattern`` inside a host graph.

    ``branch[i]`` is the host vertex for pattern vertex ``i`` and
    ``paths[(u, v)]`` (``u < v``, one entry per pattern edge) is the host path
    from ``branch[u]`` to ``branch[v]``. ``p`` is the declared maximum number
    of internal vertices per path, or ``None`` when unbounded.
    """

    pattern: Graph
    branch: tuple[int, ...]
    paths: dict[Edge, tuple[int, ...]] = field(hash=False)
    p: int | None = None

    @property
    def proper(self) -> bool:
        return all(len(path) >= 3 for path in self.paths.values())

    def max_internal(self) -> int:
        return max((len(path) - 2 for path in self.paths.values()), default=0)

    def vertices(self) -> set[int]:
        out = set(self.branch)
        for path in self.paths.values():
            out.update(path)
        return out

    def to_json(self) -> dict[str, Any]:
        edges = self.pattern.edges()
        return {"pattern_n": self.pattern.n, "map": list(self.branch),
                "paths": [list(self.paths[e]) for e in edges if e in self.paths],
                "p": self.p}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> SubdivisionModel:
        """Inverse of ``to_json``; pattern edges are recovered from path endpoints."""
        n = int(data["pattern_n"])
        branch = tuple(int(v) for v in data["map"])
        if len(branch) != n:
            raise ContractError("model map length differs from pattern_n")
        where = {v: i for i, v in enumerate(branch)}
        paths: dict[Edge, tuple[int, ...]] = {}
        for raw in data.get("paths", []):
            path = tuple(int(v) for v in raw)
            if len(path) < 2 or path[0] not in where or path[-1] not in where:
                raise ContractError(f"path {list(path)} does not join two branch vertices")
            a, b = where[path[0]], where[path[-1]]
            if a > b:
                a, b, path = b, a, path[::-1]
            paths[(a, b)] = path
        pattern = Graph(n, paths.keys())
        p = data.get("p")
        return cls(pattern, branch, paths, None if p is None else int(p))
