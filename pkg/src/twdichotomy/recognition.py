"""Membership tests for the four critical classes.

The tripod and line-of-tripod tests classify each connected component by
shape:

* ``path``: a path on ``params[0]`` vertices (a single vertex counts);
* ``tripod``: a tree with one degree-3 vertex, ``params`` the arm lengths
  in non-increasing order (S_{i,j,k} with i, j, k >= 1);
* ``triangle3arms``: a triangle with a pendant path at each corner,
  ``params`` the path lengths in non-increasing order (T_{i,j,k}, i, j, k >= 0);
* ``other``: anything else.

Whole-graph verdicts from :func:`is_complete` and
:func:`is_complete_bipartite` use the shape tags ``complete`` (``params`` =
``(n,)``) and ``complete_bipartite`` (``params`` = part sizes, ascending).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .generators import GeneratorSpec, generate
from .graph import Graph, bits, disjoint_union


@dataclass(frozen=True)
class ComponentShape:
    tag: str
    vertices: tuple[int, ...]
    params: tuple[int, ...] = ()

    def spec(self) -> GeneratorSpec | None:
        if self.tag == "path":
            return GeneratorSpec("path", self.params)
        if self.tag == "tripod":
            return GeneratorSpec("tripod", self.params)
        if self.tag == "triangle3arms":
            return GeneratorSpec("line-tripod", self.params)
        if self.tag == "complete":
            return GeneratorSpec("complete", self.params)
        if self.tag == "complete_bipartite":
            return GeneratorSpec("bipartite", self.params)
        return None

    def to_json(self) -> dict[str, Any]:
        return {"tag": self.tag, "vertices": list(self.vertices), "params": list(self.params)}


@dataclass(frozen=True)
class RecognitionVerdict:
    member: bool
    shapes: list[ComponentShape] = field(default_factory=list)
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict[str, Any]:
        return {"member": self.member, "shapes": [s.to_json() for s in self.shapes],
                "reason": self.reason}


def reconstruct(shapes: list[ComponentShape]) -> Graph:
    """Disjoint union of the generator graphs named by ``shapes``."""
    specs = [s.spec() for s in shapes]
    if any(sp is None for sp in specs):
        raise ValueError("cannot reconstruct a shape tagged 'other'")
    return disjoint_union(generate(sp) for sp in specs)


def _walk_arm(g: Graph, start: int, prev: int, allowed: int) -> int:
    """Length of the pendant path entered at ``start`` coming from ``prev``."""
    length = 0
    cur = start
    while True:
        length += 1
        nxt = [w for w in g.neighbors(cur) if w != prev and allowed >> w & 1]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]


def classify_component(g: Graph, comp: list[int]) -> ComponentShape:
    verts = tuple(comp)
    mask = g.mask_of(comp)
    n_c = len(comp)
    m_c = sum(g.degree(v) for v in comp) // 2
    deg = {v: g.degree(v) for v in comp}

    if m_c == n_c - 1:
        if all(d <= 2 for d in deg.values()):
            return ComponentShape("path", verts, (n_c,))
        centers = [v for v in comp if deg[v] == 3]
        if len(centers) == 1 and all(d <= 3 for d in deg.values()):
            c = centers[0]
            arms = sorted((_walk_arm(g, w, c, mask) for w in g.neighbors(c)), reverse=True)
            return ComponentShape("tripod", verts, tuple(arms))
        return ComponentShape("other", verts)

    if m_c == n_c:
        # Peel leaves; what remains of a unicyclic component is its cycle.
        core = mask
        degree = dict(deg)
        leaves = [v for v in comp if degree[v] == 1]
        while leaves:
            v = leaves.pop()
            core &= ~(1 << v)
            for w in g.neighbors(v):
                if core >> w & 1:
                    degree[w] -= 1
                    if degree[w] == 1:
                        leaves.append(w)
        tri = list(bits(core))
        if len(tri) == 3 and all(deg[v] <= 3 for v in tri) and \
                all(deg[v] <= 2 for v in comp if v not in tri):
            arms = []
            for v in tri:
                out = [w for w in g.neighbors(v) if not core >> w & 1]
                arms.append(_walk_arm(g, out[0], v, mask) if out else 0)
            return ComponentShape("triangle3arms", verts, tuple(sorted(arms, reverse=True)))
    return ComponentShape("other", verts)


def component_shapes(g: Graph) -> list[ComponentShape]:
    return [classify_component(g, comp) for comp in g.components()]


def is_complete(g: Graph) -> RecognitionVerdict:
    full = (1 << g.n) - 1
    for u in range(g.n):
        missing = full & ~g.rows[u] & ~(1 << u)
        if missing:
            v = (missing & -missing).bit_length() - 1
            lo, hi = min(u, v), max(u, v)
            return RecognitionVerdict(False, [], f"vertices {lo} and {hi} are not adjacent")
    return RecognitionVerdict(True, [ComponentShape("complete", tuple(range(g.n)), (g.n,))])


def is_complete_bipartite(g: Graph, lenient: bool = False) -> RecognitionVerdict:
    """Complete bipartite test via the complement being at most two cliques.

    Both parts must be non-empty when ``n >= 2``; ``lenient`` also accepts
    edgeless graphs as ``K_{n,0}``. ``K_0`` and ``K_1`` are always accepted.
    """
    n = g.n
    if n <= 1:
        return RecognitionVerdict(True, [ComponentShape("complete_bipartite", tuple(range(n)), (0, n))])
    comp_g = g.complement()
    parts = comp_g.components()
    if len(parts) > 2:
        return RecognitionVerdict(False, [], f"complement has {len(parts)} components; at most 2 allowed")
    for part in parts:
        pm = g.mask_of(part)
        for v in part:
            if g.rows[v] & pm:
                w = (g.rows[v] & pm & -(g.rows[v] & pm)).bit_length() - 1
                return RecognitionVerdict(False, [], f"vertices {min(v, w)} and {max(v, w)} lie in the same part but are adjacent")
            if comp_g.rows[v] & pm != pm & ~(1 << v):
                return RecognitionVerdict(False, [], f"vertex {v} misses a cross edge")
    if len(parts) == 1 and not lenient:
        return RecognitionVerdict(False, [], "edgeless graph: one part would be empty")
    sizes = tuple(sorted([0] + [len(parts[0])] if len(parts) == 1 else [len(p) for p in parts]))
    return RecognitionVerdict(True, [ComponentShape("complete_bipartite", tuple(range(n)), sizes)])


def is_tripod(g: Graph) -> RecognitionVerdict:
    shapes = component_shapes(g)
    for s in shapes:
        if s.tag not in ("path", "tripod"):
            return RecognitionVerdict(False, shapes, _tripod_reason(g, s))
    return RecognitionVerdict(True, shapes)


def _tripod_reason(g: Graph, s: ComponentShape) -> str:
    verts = s.vertices
    m_c = sum(g.degree(v) for v in verts) // 2
    if m_c >= len(verts):
        return f"component containing vertex {verts[0]} has a cycle"
    leaves = sum(1 for v in verts if g.degree(v) == 1)
    return f"component containing vertex {verts[0]} has {leaves} leaves"


def is_line_of_tripod(g: Graph, strict: bool = False) -> RecognitionVerdict:
    """Line graphs of tripods.

    With ``strict=False`` path components are allowed (they are line graphs
    of paths); with ``strict=True`` every component must be a T_{i,j,k}.
    """
    shapes = component_shapes(g)
    ok = ("triangle3arms",) if strict else ("path", "triangle3arms")
    for s in shapes:
        if s.tag not in ok:
            if s.tag == "path":
                why = "is a path (rejected in strict mode)"
            elif s.tag == "tripod":
                why = "is a tree with a degree-3 vertex"
            else:
                why = "is neither a path nor a triangle with three pendant paths"
            return RecognitionVerdict(False, shapes, f"component containing vertex {s.vertices[0]} {why}")
    return RecognitionVerdict(True, shapes)


RECOGNIZERS = {
    "complete": is_complete,
    "bipartite": is_complete_bipartite,
    "tripod": is_tripod,
    "line-tripod": is_line_of_tripod,
}
