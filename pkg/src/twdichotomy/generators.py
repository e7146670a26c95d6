"""Deterministic generators for the graph families used throughout the package.

Vertex labelings (all deterministic):

* ``complete(n)``: ``0..n-1``.
* ``bipartite(a, b)``: part one is ``0..a-1``, part two ``a..a+b-1``.
* ``tripod(i, j, k)`` (S_{i,j,k}): centre ``0``, then the three arms
  consecutively, each listed outwards from the centre.
* ``line-tripod(i, j, k)`` (T_{i,j,k}): triangle ``0, 1, 2``; the arm of
  length ``i`` hangs off ``0``, ``j`` off ``1``, ``k`` off ``2``, each listed
  outwards and placed consecutively after the triangle.
* ``copies(k, inner)``: ``k`` disjoint copies, relabelled block by block.
* ``path(n)``, ``cycle(n)``: ``0 - 1 - ... - n-1`` (closed for cycles).
* ``grid(h, w)``: vertex ``r * w + c``.
* ``wall(k)``: see :func:`wall`.
* ``subdivided-complete(n, t)`` / ``subdivided-biclique(a, b, t)``: the base
  graph's labels first, then ``t`` new vertices per edge as in
  :func:`twdichotomy.graph.subdivide`.

Spec strings have the form ``family:p1,p2,...``; ``copies`` nests as
``copies:k:inner-spec``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecError
from .graph import Graph, disjoint_union, subdivide

FAMILIES = {
    "complete": 1, "bipartite": 2, "tripod": 3, "line-tripod": 3, "copies": 1,
    "path": 1, "cycle": 1, "grid": 2, "wall": 1,
    "subdivided-complete": 2, "subdivided-biclique": 3,
}

ALIASES = {
    "K": "complete", "clique": "complete",
    "KK": "bipartite", "biclique": "bipartite", "complete-bipartite": "bipartite",
    "S": "tripod", "T": "line-tripod", "line_tripod": "line-tripod",
    "P": "path", "C": "cycle",
}


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: tuple[int, ...]
    inner: GeneratorSpec | None = None

    def __post_init__(self):
        fam = ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}")
        if len(self.params) != FAMILIES[fam]:
            raise SpecError(f"{fam} takes {FAMILIES[fam]} parameter(s), got {len(self.params)}")
        if any(p < 0 for p in self.params):
            raise SpecError(f"{fam}: parameters must be non-negative")
        if fam == "cycle" and self.params[0] < 3:
            raise SpecError("cycle requires n >= 3")
        if fam == "wall" and self.params[0] < 2:
            raise SpecError("wall requires k >= 2")
        if (fam == "copies") != (self.inner is not None):
            raise SpecError("an inner spec is required exactly for copies")

    def __str__(self) -> str:
        s = f"{self.family}:{','.join(map(str, self.params))}"
        return f"{s}:{self.inner}" if self.inner is not None else s


def parse_generator_spec(text: str) -> GeneratorSpec:
    family, sep, rest = text.strip().partition(":")
    if not sep:
        raise SpecError(f"spec {text!r} lacks ':'")
    family = ALIASES.get(family, family)
    if family == "copies":
        count, sep, inner = rest.partition(":")
        if not sep:
            raise SpecError("copies needs the form copies:k:inner")
        return GeneratorSpec("copies", (_int(count, text),), parse_generator_spec(inner))
    params = tuple(_int(p, text) for p in rest.replace("x", ",").split(",")) if rest else ()
    return GeneratorSpec(family, params)


def _int(token: str, text: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecError(f"non-integer parameter {token!r} in {text!r}") from None


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _with_arms(core_n: int, core_edges: list, anchors: tuple[int, ...], arms: tuple[int, ...]) -> Graph:
    edges = list(core_edges)
    nxt = core_n
    for anchor, length in zip(anchors, arms):
        prev = anchor
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def tripod(i: int, j: int, k: int) -> Graph:
    return _with_arms(1, [], (0, 0, 0), (i, j, k))


def line_tripod(i: int, j: int, k: int) -> Graph:
    return _with_arms(3, [(0, 1), (0, 2), (1, 2)], (0, 1, 2), (i, j, k))


def grid(h: int, w: int) -> Graph:
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                edges.append((v, v + w))
    return Graph(h * w, edges)


def wall(k: int) -> Graph:
    """Hexagonal brick wall with ``k`` rows of ``k`` bricks.

    Start from ``k + 1`` horizontal paths of ``2k + 2`` vertices (row ``r``,
    column ``c``); join ``(r, c)`` to ``(r + 1, c)`` exactly when ``r + c`` is
    even, so every brick is a 6-cycle. The two resulting degree-1 corner
    vertices are removed and the rest relabelled in row-major order. The
    graph has maximum degree 3, is bipartite and contains no 4-cycle.
    """
    width = 2 * k + 2
    idx = lambda r, c: r * width + c
    edges = []
    for r in range(k + 1):
        for c in range(width):
            if c + 1 < width:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r < k and (r + c) % 2 == 0:
                edges.append((idx(r, c), idx(r + 1, c)))
    g = Graph((k + 1) * width, edges)
    keep = [v for v in range(g.n) if g.degree(v) > 1]
    return g.induced(keep)


def generate(spec: GeneratorSpec) -> Graph:
    f, ps = spec.family, spec.params
    if f == "complete":
        return complete(ps[0])
    if f == "bipartite":
        return complete_bipartite(*ps)
    if f == "tripod":
        return tripod(*ps)
    if f == "line-tripod":
        return line_tripod(*ps)
    if f == "copies":
        return disjoint_union([generate(spec.inner)] * ps[0])
    if f == "path":
        return path(ps[0])
    if f == "cycle":
        return cycle(ps[0])
    if f == "grid":
        return grid(*ps)
    if f == "wall":
        return wall(ps[0])
    if f == "subdivided-complete":
        return subdivide(complete(ps[0]), ps[1])[0]
    if f == "subdivided-biclique":
        return subdivide(complete_bipartite(ps[0], ps[1]), ps[2])[0]
    raise SpecError(f"unknown family {f!r}")  # unreachable: validated in GeneratorSpec
