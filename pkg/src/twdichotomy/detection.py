"""Substructure search and verification.

All searches are deterministic: host vertices are tried by descending degree
with ties broken by index, and the budget counts node expansions (one per
tentative vertex assignment), never wall time.
"""

from __future__ import annotations

from collections.abc import Sequence

from .certificates import Embedding, SubdivisionModel, Violation
from .errors import BudgetExceeded, ContractError
from .generators import complete, complete_bipartite
from .graph import Graph, bits, popcount

DEFAULT_BUDGET = 2_000_000
ISOMORPHISM_CAP = 12


def degree_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _pattern_order(pattern: Graph) -> list[int]:
    """Connectivity-first order: each next vertex has the most already-placed
    neighbours, then the highest degree, then the smallest index."""
    order: list[int] = []
    placed = 0
    remaining = set(range(pattern.n))
    while remaining:
        v = max(remaining, key=lambda x: (popcount(pattern.rows[x] & placed), pattern.degree(x), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_induced(pattern: Graph, host: Graph, budget: int | None = DEFAULT_BUDGET,
                 *, mode: str = "induced") -> Embedding | None:
    """Backtracking search for an embedding of ``pattern`` into ``host``.

    Returns ``None`` only after the search space is exhausted; raises
    :class:`BudgetExceeded` when more than ``budget`` expansions are needed.
    ``mode="subgraph"`` drops the non-edge constraints.
    """
    if mode not in ("induced", "subgraph"):
        raise ContractError(f"unknown embedding mode {mode!r}")
    if budget is not None and budget <= 0:
        raise ContractError("budget must be positive")
    k = pattern.n
    if k == 0:
        return Embedding(pattern, (), mode)
    if k > host.n or pattern.m > host.m:
        return None

    induced = mode == "induced"
    order = _pattern_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    prev_adj = [[pos[w] for w in pattern.neighbors(v) if pos[w] < t] for t, v in enumerate(order)]
    prev_non = [[s for s in range(t) if not pattern.has_edge(order[s], v)] for t, v in enumerate(order)]
    need = [pattern.degree(v) for v in order]
    host_order = degree_order(host)
    hdeg = host.degrees()
    rows = host.rows
    full = (1 << host.n) - 1
    img = [0] * k
    expansions = 0

    def extend(t: int, used: int) -> bool:
        nonlocal expansions
        if t == k:
            return True
        cand = full & ~used
        for s in prev_adj[t]:
            cand &= rows[img[s]]
        if induced:
            for s in prev_non[t]:
                cand &= ~rows[img[s]]
        if not cand:
            return False
        for h in host_order:
            if not cand >> h & 1 or hdeg[h] < need[t]:
                continue
            expansions += 1
            if budget is not None and expansions > budget:
                raise BudgetExceeded(f"induced search exceeded {budget} expansions")
            img[t] = h
            if extend(t + 1, used | 1 << h):
                return True
        return False

    if not extend(0, 0):
        return None
    mapping = [0] * k
    for t, v in enumerate(order):
        mapping[v] = img[t]
    return Embedding(pattern, tuple(mapping), mode)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if max(a.n, b.n) > ISOMORPHISM_CAP:
        raise ContractError(f"isomorphism test is limited to {ISOMORPHISM_CAP} vertices")
    if a.n != b.n or a.m != b.m or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return find_induced(a, b, budget=None) is not None


def _color_order(cand: int, rows: Sequence[int]) -> list[tuple[int, int]]:
    """Greedy colouring of ``cand``; returns ``(vertex, colour)`` by increasing colour."""
    out = []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        q = uncolored
        while q:
            v = (q & -q).bit_length() - 1
            q &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            out.append((v, color))
    return out


def max_clique(g: Graph, target: int | None = None) -> list[int]:
    """Exact maximum clique by branch and bound with a greedy-colouring bound.

    With ``target`` set, stops as soon as a clique of that size is found.
    Returns the clique's vertices sorted.
    """
    perm = degree_order(g)
    where = {v: i for i, v in enumerate(perm)}
    rows = [0] * g.n
    for i, v in enumerate(perm):
        for w in g.neighbors(v):
            rows[i] |= 1 << where[w]
    best: list[int] = []
    cur: list[int] = []

    def expand(cand: int) -> bool:
        nonlocal best
        for v, c in reversed(_color_order(cand, rows)):
            if len(cur) + c <= len(best):
                return False
            cur.append(v)
            if target is not None and len(cur) >= target:
                best = cur[:]
                return True
            nxt = cand & rows[v]
            if nxt:
                if expand(nxt):
                    return True
            elif len(cur) > len(best):
                best = cur[:]
                if target is not None and len(best) >= target:
                    return True
            cur.pop()
            cand &= ~(1 << v)
        return False

    if g.n:
        expand((1 << g.n) - 1)
    return sorted(perm[i] for i in best)


def max_independent_set(g: Graph, target: int | None = None) -> list[int]:
    return max_clique(g.complement(), target)


def find_clique(g: Graph, k: int) -> Embedding | None:
    if k < 1:
        raise ContractError("clique size must be at least 1")
    found = max_clique(g, target=k)
    if len(found) < k:
        return None
    return Embedding(complete(k), tuple(found[:k]), "induced")


def find_biclique_subgraph(g: Graph, t: int, induced: bool = False) -> Embedding | None:
    """Disjoint ``A``, ``B`` of size ``t`` with every ``A x B`` pair adjacent.

    In the default subgraph mode the parts may contain internal edges; with
    ``induced=True`` both parts must be independent. The embedding maps
    ``K_{t,t}`` (parts ``0..t-1`` and ``t..2t-1``) onto ``A + B``.
    """
    if t < 1:
        raise ContractError("biclique size must be at least 1")
    order = degree_order(g)
    rows = g.rows
    chosen: list[int] = []

    def pick_b(common: int) -> list[int] | None:
        if not induced:
            picked = [v for v in order if common >> v & 1][:t]
            return picked if len(picked) == t else None
        sub = list(bits(common))
        ind = max_independent_set(g.induced(sub), target=t)
        return [sub[i] for i in ind[:t]] if len(ind) >= t else None

    def choose(start: int, common: int) -> list[int] | None:
        if len(chosen) == t:
            return pick_b(common)
        for i in range(start, len(order)):
            v = order[i]
            if induced and any(g.has_edge(v, a) for a in chosen):
                continue
            nc = common & rows[v]
            if popcount(nc) < t:
                continue
            chosen.append(v)
            b = choose(i + 1, nc)
            if b is not None:
                return b
            chosen.pop()
        return None

    if 2 * t > g.n:
        return None
    b = choose(0, (1 << g.n) - 1)
    if b is None:
        return None
    return Embedding(complete_bipartite(t, t), tuple(chosen + b), "induced" if induced else "subgraph")


def is_f_free(g: Graph, forbidden: Sequence[Graph], budget: int | None = DEFAULT_BUDGET
              ) -> tuple[bool, Embedding | None]:
    """``(True, None)`` when no member embeds as an induced subgraph, else
    ``(False, witness)`` for the first member (in list order) that does."""
    for f in forbidden:
        emb = find_induced(f, g, budget)
        if emb is not None:
            return False, emb
    return True, None


def verify_embedding(host: Graph, emb: Embedding) -> Violation | None:
    pat = emb.pattern
    img = emb.mapping
    if len(img) != pat.n:
        return Violation("map length differs from pattern size", img)
    if len(set(img)) != len(img):
        return Violation("map is not injective", img)
    if any(not 0 <= v < host.n for v in img):
        return Violation("map leaves the host vertex range", img)
    for u in range(pat.n):
        for v in range(u + 1, pat.n):
            e, he = pat.has_edge(u, v), host.has_edge(img[u], img[v])
            if e and not he:
                return Violation("pattern edge not mapped to a host edge", (img[u], img[v]))
            if emb.mode == "induced" and he and not e:
                return Violation("host edge between images of a pattern non-edge", (img[u], img[v]))
    return None


def is_biclique_witness(host: Graph, emb: Embedding, t: int | None = None) -> bool:
    """True when ``emb`` is a valid (subgraph-mode) ``K_{t,t}`` in ``host``."""
    n = emb.pattern.n
    if n % 2 or (t is not None and n != 2 * t) or emb.pattern != complete_bipartite(n // 2, n // 2):
        return False
    return verify_embedding(host, Embedding(emb.pattern, emb.mapping, "subgraph")) is None


def verify_subdivision_model(host: Graph, model: SubdivisionModel, require_induced: bool = False,
                             require_proper: bool = False, p: int | None = None) -> Violation | None:
    """Check that ``model`` is a subdivision of its pattern inside ``host``.

    ``p`` bounds the internal vertices per path (defaults to ``model.p``;
    ``None`` means unbounded). With ``require_induced`` the model's vertex set
    must induce exactly the union of the path edges.
    """
    pat = model.pattern
    branch = model.branch
    if p is None:
        p = model.p
    if len(branch) != pat.n:
        return Violation("branch map length differs from pattern size", branch)
    if len(set(branch)) != len(branch):
        return Violation("branch map is not injective", branch)
    if any(not 0 <= v < host.n for v in branch):
        return Violation("branch vertex outside host", branch)
    pattern_edges = pat.edges()
    if set(model.paths) != set(pattern_edges):
        return Violation("paths do not match the pattern edges", tuple(sorted(set(model.paths) ^ set(pattern_edges))))

    branch_set = set(branch)
    owner: dict[int, tuple[int, int]] = {}
    used_edges = set()
    for e in pattern_edges:
        path = model.paths[e]
        if len(path) < 2 or path[0] != branch[e[0]] or path[-1] != branch[e[1]]:
            return Violation("path endpoints differ from the branch vertices", path, f"pattern edge {e}")
        if len(set(path)) != len(path):
            return Violation("path repeats a vertex", path)
        for a, b in zip(path, path[1:]):
            if not (0 <= a < host.n and 0 <= b < host.n) or not host.has_edge(a, b):
                return Violation("consecutive path vertices are not adjacent in the host", (a, b))
            used_edges.add((min(a, b), max(a, b)))
        inner = path[1:-1]
        if p is not None and len(inner) > p:
            return Violation("path has more than p internal vertices", path, f"p={p}")
        if require_proper and not inner:
            return Violation("path has no internal vertex (not proper)", path)
        for x in inner:
            if x in branch_set:
                return Violation("path passes through a branch vertex", (x,), f"pattern edge {e}")
            if x in owner:
                return Violation("paths share an internal vertex", (x,), f"pattern edges {owner[x]} and {e}")
            owner[x] = e

    if require_induced:
        verts = sorted(model.vertices())
        vmask = host.mask_of(verts)
        for a in verts:
            for b in bits(host.rows[a] & vmask):
                if a < b and (a, b) not in used_edges:
                    return Violation("model is not induced: extra host edge", (a, b))
    return None
