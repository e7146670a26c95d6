"""Tree decompositions: checking, exact tree-width, torsos and torso gluing."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from .certificates import Violation
from .errors import BudgetExceeded, ContractError
from .graph import Graph, bits, popcount

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by tree nodes ``0..len(bags)-1``; ``edges`` are tree edges."""

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, bags: Iterable[Iterable[int]], edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
        return cls(tuple(frozenset(b) for b in bags),
                   tuple((min(a, b), max(a, b)) for a, b in edges))

    @property
    def nodes(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self, x: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == x] + [a for a, b in self.edges if b == x])

    def side(self, x: int, y: int) -> set[int]:
        """Nodes of the component of ``T - xy`` that contains ``x``."""
        seen = {x}
        stack = [x]
        while stack:
            a = stack.pop()
            for b in self.neighbors(a):
                if b not in seen and not (a == x and b == y):
                    seen.add(b)
                    stack.append(b)
        return seen

    def to_json(self) -> dict[str, Any]:
        return {"nodes": self.nodes, "tree_edges": [list(e) for e in self.edges],
                "bags": [sorted(b) for b in self.bags]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> TreeDecomposition:
        bags = data["bags"]
        if int(data.get("nodes", len(bags))) != len(bags):
            raise ContractError("'nodes' disagrees with the number of bags")
        return cls.build(bags, [tuple(e) for e in data.get("tree_edges", [])])

    def to_dot(self, name: str = "TD") -> str:
        out = [f"graph {name} {{"]
        for i, b in enumerate(self.bags):
            out.append(f'  {i} [shape=box, label="{{{", ".join(map(str, sorted(b)))}}}"];')
        out.extend(f"  {a} -- {b};" for a, b in self.edges)
        out.append("}")
        return "\n".join(out) + "\n"


def width(td: TreeDecomposition) -> int:
    """Largest bag size minus one (``-1`` for a decomposition with no bags)."""
    return td.width()


def _tree_violation(td: TreeDecomposition) -> Violation | None:
    k = td.nodes
    for a, b in td.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return Violation("tree edge references an unknown node or is a loop", (a, b))
    if len(set(td.edges)) != len(td.edges):
        return Violation("repeated tree edge", ())
    if k and len(td.edges) != k - 1:
        return Violation("decomposition tree is not a tree", (), f"{k} nodes, {len(td.edges)} edges")
    if k and len(td.side(0, -1)) != k:
        return Violation("decomposition tree is disconnected", ())
    return None


def validate(g: Graph, td: TreeDecomposition) -> Violation | None:
    """Check the three decomposition axioms; ``None`` means valid."""
    bad = _tree_violation(td)
    if bad:
        return bad
    covered = set()
    for b in td.bags:
        for v in b:
            if not 0 <= v < g.n:
                return Violation("bag holds a vertex outside the graph", (v,))
        covered |= b
    for v in range(g.n):
        if v not in covered:
            return Violation("vertex not covered by any bag", (v,))
    masks = [g.mask_of(b) for b in td.bags]
    for u, v in g.edges():
        pair = (1 << u) | (1 << v)
        if not any(m & pair == pair for m in masks):
            return Violation("edge not covered by any bag", (u, v))
    for v in range(g.n):
        occ = {i for i, b in enumerate(td.bags) if v in b}
        start = next(iter(occ))
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for c in td.neighbors(a):
                if c in occ and c not in seen:
                    seen.add(c)
                    stack.append(c)
        if seen != occ:
            return Violation("bags containing a vertex are not connected in the tree", (v,),
                             f"nodes {sorted(occ)}")
    return None


# --- elimination orderings -------------------------------------------------

def _eliminate(rows: list[int], v: int) -> list[int]:
    nb = rows[v]
    out = list(rows)
    for w in bits(nb):
        out[w] = (out[w] | nb) & ~(1 << w) & ~(1 << v)
    out[v] = 0
    return out


def order_width(g: Graph, order: Sequence[int]) -> int:
    """Width of the decomposition induced by eliminating ``order``."""
    rows = list(g.rows)
    best = -1
    for v in order:
        best = max(best, popcount(rows[v]))
        rows = _eliminate(rows, v)
    return best


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Bag of ``v`` = ``v`` plus its neighbours when eliminated; the bag is
    attached to the bag of the earliest-eliminated of those neighbours, or
    to the next bag in the order when it has none."""
    if sorted(order) != list(range(g.n)):
        raise ContractError("elimination order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    rows = list(g.rows)
    bags = []
    edges = []
    for i, v in enumerate(order):
        nb = rows[v]
        bags.append(frozenset(bits(nb)) | {v})
        if nb:
            parent = min(bits(nb), key=pos.__getitem__)
            edges.append((i, pos[parent]))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
        rows = _eliminate(rows, v)
    return TreeDecomposition.build(bags, edges)


def greedy_order(g: Graph, rule: str = "min-fill") -> list[int]:
    """Greedy elimination order by ``min-fill`` or ``min-degree`` (index tie-break)."""
    rows = list(g.rows)
    alive = set(range(g.n))
    order = []
    while alive:
        if rule == "min-degree":
            v = min(alive, key=lambda x: (popcount(rows[x]), x))
        elif rule == "min-fill":
            v = min(alive, key=lambda x: (_fill(rows, x), x))
        else:
            raise ContractError(f"unknown greedy rule {rule!r}")
        order.append(v)
        rows = _eliminate(rows, v)
        alive.discard(v)
    return order


def _fill(rows: Sequence[int], v: int) -> int:
    nb = rows[v]
    missing = 0
    for w in bits(nb):
        missing += popcount(nb & ~rows[w] & ~(1 << w))
    return missing // 2


def greedy_decomposition(g: Graph, rule: str = "min-fill") -> TreeDecomposition:
    return decomposition_from_order(g, greedy_order(g, rule))


def degeneracy(rows: Sequence[int], alive: int) -> int:
    """Max over the peeling sequence of the minimum degree (a tree-width lower bound)."""
    deg = {v: popcount(rows[v] & alive) for v in bits(alive)}
    best = 0
    while deg:
        v = min(deg, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        del deg[v]
        alive &= ~(1 << v)
        for w in bits(rows[v] & alive):
            deg[w] -= 1
    return best


def _minor_min_width(rows: Sequence[int], alive: int) -> int:
    """Contraction-degeneracy style bound: repeatedly contract a minimum
    degree vertex into its neighbour with fewest common neighbours."""
    adj = {v: rows[v] & alive for v in bits(alive)}
    best = 0
    while len(adj) > 1:
        v = min(adj, key=lambda x: (popcount(adj[x]), x))
        d = popcount(adj[v])
        best = max(best, d)
        nb = adj.pop(v)
        if not nb:
            continue
        u = min(bits(nb), key=lambda x: (popcount(adj[x] & nb), x))
        merged = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
        adj[u] = merged
        for w in bits(nb):
            if w != u:
                adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
        for w in bits(merged):
            adj[w] |= 1 << u
    return best


def exact_treewidth(g: Graph, budget: int | None = DEFAULT_BUDGET) -> tuple[int, TreeDecomposition]:
    """Minimum width over all elimination orderings, with an optimal decomposition.

    Depth-first branch and bound over elimination orderings. The graph left
    after eliminating a set depends only on the set, so states are memoised
    by the eliminated set. Pruning uses the degeneracy and minor-min-width
    lower bounds and a min-fill upper bound; simplicial and almost
    simplicial vertices are eliminated without branching. Children are
    tried by increasing degree, then index.

    Raises :class:`BudgetExceeded` (carrying the current upper and lower
    bounds) after ``budget`` node expansions.
    """
    n = g.n
    if n == 0:
        return -1, TreeDecomposition((), ())
    full = (1 << n) - 1
    ub_order = greedy_order(g, "min-fill")
    ub = order_width(g, ub_order)
    alt = greedy_order(g, "min-degree")
    if order_width(g, alt) < ub:
        ub, ub_order = order_width(g, alt), alt
    lb = max(degeneracy(g.rows, full), _minor_min_width(g.rows, full))
    if lb >= ub:
        return ub, decomposition_from_order(g, ub_order)

    best = {"ub": ub, "order": ub_order}
    seen: dict[int, int] = {}
    expansions = 0
    order: list[int] = []

    def search(rows: list[int], alive: int, sofar: int) -> None:
        nonlocal expansions
        expansions += 1
        if budget is not None and expansions > budget:
            raise BudgetExceeded(f"tree-width search exceeded {budget} expansions",
                                 upper=best["ub"], lower=lb)
        remaining = popcount(alive)
        if max(sofar, remaining - 1) < best["ub"]:
            # Any order of the rest has width at most remaining - 1.
            if remaining - 1 <= sofar or remaining <= 2:
                best["ub"] = max(sofar, remaining - 1)
                best["order"] = order + list(bits(alive))
                return
        prev = seen.get(alive)
        if prev is not None and prev <= sofar:
            return
        seen[alive] = sofar
        low = max(sofar, degeneracy(rows, alive))
        if low >= best["ub"]:
            return
        low = max(low, _minor_min_width(rows, alive))
        if low >= best["ub"]:
            return

        cands = sorted(bits(alive), key=lambda x: (popcount(rows[x]), x))
        forced = None
        for v in cands:
            nb = rows[v]
            if _fill(rows, v) == 0:
                forced = v
                break
            d = popcount(nb)
            if d <= low and any(_fill_without(rows, v, w) == 0 for w in bits(nb)):
                forced = v
                break
        branch = [forced] if forced is not None else cands
        for v in branch:
            d = popcount(rows[v])
            if max(sofar, d) >= best["ub"]:
                continue
            order.append(v)
            search(_eliminate(rows, v), alive & ~(1 << v), max(sofar, d))
            order.pop()

    search(list(g.rows), full, -1)
    return best["ub"], decomposition_from_order(g, best["order"])


def _fill_without(rows: Sequence[int], v: int, w: int) -> int:
    nb = rows[v] & ~(1 << w)
    missing = 0
    for x in bits(nb):
        missing += popcount(nb & ~rows[x] & ~(1 << x))
    return missing


# --- separators, tightness, torsos -------------------------------------------

@dataclass(frozen=True)
class SeparatorView:
    edge: tuple[int, int]
    separator: frozenset[int]
    side_x: frozenset[int]
    side_y: frozenset[int]


def separator_view(td: TreeDecomposition, x: int, y: int) -> SeparatorView:
    """``Z = V_x & V_y`` and the vertex unions ``U_x``, ``U_y`` of both sides of ``xy``."""
    if (min(x, y), max(x, y)) not in td.edges:
        raise ContractError(f"({x}, {y}) is not a tree edge")
    ux = frozenset().union(*(td.bags[t] for t in td.side(x, y)))
    uy = frozenset().union(*(td.bags[t] for t in td.side(y, x)))
    return SeparatorView((x, y), td.bags[x] & td.bags[y], ux, uy)


def _reachable(g: Graph, allowed: int, s: int, t: int) -> bool:
    seen = 1 << s
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.rows[v]
        nxt &= allowed & ~seen
        if nxt >> t & 1:
            return True
        seen |= nxt
        frontier = nxt
    return False


def is_tight(g: Graph, td: TreeDecomposition) -> Violation | None:
    """For every tree edge ``xy`` and ``u, v`` in ``Z``, both ``G[U_x]`` and
    ``G[U_y]`` must hold a u-v path with no internal vertex in ``Z``."""
    for x, y in td.edges:
        view = separator_view(td, x, y)
        z = sorted(view.separator)
        zmask = g.mask_of(z)
        for side_name, side in (("x", view.side_x), ("y", view.side_y)):
            smask = g.mask_of(side)
            for i, u in enumerate(z):
                for v in z[i + 1:]:
                    allowed = smask & ~(zmask & ~(1 << u) & ~(1 << v))
                    if not _reachable(g, allowed, u, v):
                        return Violation("no u-v path avoiding the separator", (u, v),
                                         f"tree edge {(x, y)}, side {side_name}")
    return None


@dataclass(frozen=True)
class TorsoView:
    """Torso at ``node``; ``graph`` vertex ``i`` stands for host vertex ``vertices[i]``."""

    node: int
    vertices: tuple[int, ...]
    graph: Graph

    def host_edges(self) -> set[tuple[int, int]]:
        vs = self.vertices
        return {(vs[a], vs[b]) for a, b in self.graph.edges()}


def torso(g: Graph, td: TreeDecomposition, node: int) -> TorsoView:
    if not 0 <= node < td.nodes:
        raise ContractError(f"unknown tree node {node}")
    verts = tuple(sorted(td.bags[node]))
    local = {v: i for i, v in enumerate(verts)}
    edges = set(g.induced(verts).edges())
    for y in td.neighbors(node):
        shared = sorted(local[v] for v in td.bags[node] & td.bags[y])
        for i, a in enumerate(shared):
            for b in shared[i + 1:]:
                edges.add((a, b))
    return TorsoView(node, verts, Graph(len(verts), edges))


def check_torso_degree_profile(g: Graph, td: TreeDecomposition, k: int) -> Violation | None:
    """Every torso must have fewer than ``k`` vertices of torso-degree at
    least ``2(k-1)(k-2)``."""
    threshold = 2 * (k - 1) * (k - 2)
    for x in range(td.nodes):
        t = torso(g, td, x)
        heavy = tuple(t.vertices[i] for i in range(t.graph.n) if t.graph.degree(i) >= threshold)
        if len(heavy) >= k:
            return Violation(f"torso has {len(heavy)} >= {k} vertices of degree >= {threshold}",
                             heavy, f"node {x}")
    return None


def glue_torso_decompositions(g: Graph, td: TreeDecomposition,
                              per_torso: Mapping[int, TreeDecomposition]) -> TreeDecomposition:
    """Combine decompositions of every torso into one decomposition of ``g``.

    ``per_torso[x]`` decomposes ``torso(g, td, x).graph`` (local labels).
    For each tree edge ``xy`` two fresh leaf bags equal to ``V_x & V_y`` are
    hung off the lowest-index torso-``x`` bag and the lowest-index
    torso-``y`` bag containing that set, and the two leaves are joined.
    """
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    offset: dict[int, int] = {}
    for x in range(td.nodes):
        if x not in per_torso:
            raise ContractError(f"missing decomposition for torso {x}")
        view = torso(g, td, x)
        sub = per_torso[x]
        if sub.nodes == 0:
            raise ContractError(f"decomposition of torso {x} has no bags")
        offset[x] = len(bags)
        bags.extend(frozenset(view.vertices[i] for i in b) for b in sub.bags)
        edges.extend((a + offset[x], b + offset[x]) for a, b in sub.edges)

    def holder(x: int, shared: frozenset[int]) -> int:
        for i in range(per_torso[x].nodes):
            if shared <= bags[offset[x] + i]:
                return offset[x] + i
        raise ContractError(f"no bag of torso {x} contains the separator {sorted(shared)}")

    for x, y in td.edges:
        shared = td.bags[x] & td.bags[y]
        hx, hy = holder(x, shared), holder(y, shared)
        lx, ly = len(bags), len(bags) + 1
        bags.extend([shared, shared])
        edges.extend([(hx, lx), (lx, ly), (ly, hy)])
    return TreeDecomposition.build(bags, edges)
