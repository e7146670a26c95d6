"""Pairwise vertex connectivity, k-blocks and the block number.

Two vertices are *k-inseparable* when they are adjacent or no set of fewer
than ``k`` other vertices separates them. A k-block is a maximal set of at
least ``k`` pairwise k-inseparable vertices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .detection import max_clique
from .errors import ContractError
from .graph import Graph

INFINITY = math.inf


@dataclass(frozen=True)
class SeparatorResult:
    """``kappa`` is the minimum u-v vertex cut size (``inf`` for adjacent
    pairs, with ``cut=None`` and the single edge as the only path)."""

    u: int
    v: int
    kappa: float
    cut: frozenset[int] | None
    paths: list[tuple[int, ...]] = field(default_factory=list)


def pair_connectivity(g: Graph, u: int, v: int) -> SeparatorResult:
    """Menger data for ``u``, ``v`` via unit vertex capacities.

    Each vertex ``w`` is split into ``w_in -> w_out`` with capacity 1
    (unbounded for ``u`` and ``v``); every edge ``ab`` becomes arcs
    ``a_out -> b_in`` and ``b_out -> a_in``. The flow runs from ``u_out`` to
    ``v_in`` along BFS-shortest augmenting paths.
    """
    if u == v:
        raise ContractError("pair_connectivity needs two distinct vertices")
    if g.has_edge(u, v):
        return SeparatorResult(u, v, INFINITY, None, [(u, v)])

    n = g.n
    big = n + 1
    # Node 2w is w_in, 2w+1 is w_out. Every original arc has a distinct
    # reverse arc, so flow on an arc is its original capacity minus residual.
    orig: dict[tuple[int, int], int] = {}
    for w in range(n):
        orig[(2 * w, 2 * w + 1)] = big if w in (u, v) else 1
    for a, b in g.edges():
        orig[(2 * a + 1, 2 * b)] = big
        orig[(2 * b + 1, 2 * a)] = big
    res = dict(orig)
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for a, b in orig:
        res[(b, a)] = 0
        adj[a].append(b)
        adj[b].append(a)
    source, sink = 2 * u + 1, 2 * v

    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and res[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            res[(x, y)] -= 1
            res[(y, x)] += 1
            y = x
        flow += 1

    reach = set(parent)
    cut = frozenset(w for w in range(n)
                    if w not in (u, v) and 2 * w in reach and 2 * w + 1 not in reach)

    # Each internal vertex carries at most one unit, so walking flow-carrying
    # edge arcs from u traces the paths without branching.
    paths = []
    taken: set[tuple[int, int]] = set()
    for _ in range(flow):
        walk = [u]
        x = u
        while x != v:
            for y in g.neighbors(x):
                arc_ = (2 * x + 1, 2 * y)
                if arc_ not in taken and orig[arc_] - res[arc_] > 0:
                    taken.add(arc_)
                    break
            else:  # pragma: no cover
                raise RuntimeError("flow decomposition failed")
            walk.append(y)
            x = y
        paths.append(_erase_loops(walk))
    return SeparatorResult(u, v, flow, cut, paths)


def _erase_loops(walk: list[int]) -> tuple[int, ...]:
    # A flow cycle through u can make a walk revisit u.
    out: list[int] = []
    where: dict[int, int] = {}
    for x in walk:
        if x in where:
            for y in out[where[x] + 1:]:
                del where[y]
            del out[where[x] + 1:]
        else:
            where[x] = len(out)
            out.append(x)
    return tuple(out)


def connectivity_table(g: Graph) -> dict[tuple[int, int], float]:
    """``kappa`` for every pair ``u < v``."""
    return {(a, b): pair_connectivity(g, a, b).kappa for a, b in combinations(range(g.n), 2)}


def inseparability_graph(g: Graph, k: int, table: dict[tuple[int, int], float] | None = None) -> Graph:
    """Auxiliary graph joining ``u, v`` when adjacent or ``kappa(u, v) >= k``."""
    table = connectivity_table(g) if table is None else table
    return Graph(g.n, [pair for pair, kap in table.items() if kap >= k])


def _extend_to_maximal(aux: Graph, seed: list[int]) -> list[int]:
    members = list(seed)
    common = (1 << aux.n) - 1
    for v in members:
        common &= aux.rows[v]
    for w in range(aux.n):
        if common >> w & 1:
            members.append(w)
            common &= aux.rows[w]
    return sorted(members)


def exists_k_block(g: Graph, k: int, table: dict[tuple[int, int], float] | None = None) -> list[int] | None:
    """A k-block (sorted vertex list), or ``None`` when none exists."""
    if k < 1:
        raise ContractError("k must be at least 1")
    if g.n < k:
        return None
    aux = inseparability_graph(g, k, table)
    clique = max_clique(aux, target=k)
    if len(clique) < k:
        return None
    return _extend_to_maximal(aux, clique[:k])


def block_number(g: Graph) -> tuple[int, list[int]]:
    """Largest ``b`` with a b-block, scanning ``b = n, n-1, ...``; plus a witness."""
    if g.n < 1:
        raise ContractError("block number needs at least one vertex")
    table = connectivity_table(g)
    for k in range(g.n, 0, -1):
        found = exists_k_block(g, k, table)
        if found is not None:
            return k, found
    raise AssertionError("every non-empty graph has a 1-block")  # pragma: no cover


def _maximal_cliques(aux: Graph) -> list[list[int]]:
    """Bron-Kerbosch with pivoting; cliques sorted, list sorted."""
    out: list[list[int]] = []

    def bk(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            out.append(sorted(r))
            return
        px = p | x
        pivot = max((w for w in range(aux.n) if px >> w & 1), key=lambda w: bin(aux.rows[w] & p).count("1"))
        cand = p & ~aux.rows[pivot]
        w = 0
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            bk(r + [w], p & aux.rows[w], x & aux.rows[w])
            p &= ~low
            x |= low

    if aux.n:
        bk([], (1 << aux.n) - 1, 0)
    return sorted(out)


@dataclass(frozen=True)
class BlockReport:
    k: int
    blocks: list[list[int]]
    block_number: int

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "blocks": self.blocks, "block_number": self.block_number}


def block_report(g: Graph, k: int | None = None) -> BlockReport:
    """All k-blocks (default ``k`` = the block number) and the block number."""
    b, _ = block_number(g)
    k = b if k is None else k
    table = connectivity_table(g)
    aux = inseparability_graph(g, k, table)
    blocks = [c for c in _maximal_cliques(aux) if len(c) >= k]
    return BlockReport(k, blocks, b)
