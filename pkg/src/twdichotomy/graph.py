"""Immutable simple undirected graphs on the vertex set ``0..n-1``.

Adjacency is held twice: as one Python-int bitset per vertex (``rows``), which
makes pair queries and neighbourhood intersections cheap, and as sorted
neighbour tuples for iteration.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from typing import TYPE_CHECKING

from .errors import ContractError

if TYPE_CHECKING:
    from .certificates import SubdivisionModel

MAX_VERTICES = 4096

Edge = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    __slots__ = ("n", "rows", "_nbrs", "_m")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if not 0 <= n <= MAX_VERTICES:
            raise ContractError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._init(n, rows)

    def _init(self, n: int, rows: Sequence[int]) -> None:
        self.n = n
        self.rows = tuple(rows)
        self._nbrs = tuple(tuple(bits(r)) for r in self.rows)
        self._m = sum(len(nb) for nb in self._nbrs) // 2

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Graph:
        """Build from bitset rows; the relation must be symmetric and irreflexive."""
        n = len(rows)
        if n > MAX_VERTICES:
            raise ContractError(f"vertex count {n} exceeds {MAX_VERTICES}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ContractError(f"row {v} references a vertex >= {n}")
            if r >> v & 1:
                raise ContractError(f"self-loop at vertex {v}")
            for w in bits(r):
                if not rows[w] >> v & 1:
                    raise ContractError(f"asymmetric adjacency between {v} and {w}")
        g = cls.__new__(cls)
        g._init(n, rows)
        return g

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self._nbrs]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[Edge]:
        """All edges ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def induced(self, vertices: Sequence[int]) -> Graph:
        """``G[vertices]``, relabelled so that ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise ContractError("induced subgraph vertex list has repeats")
        rows = []
        for v in vertices:
            r = 0
            for w in self._nbrs[v]:
                i = pos.get(w)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        g = Graph.__new__(Graph)
        g._init(len(vertices), rows)
        return g

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        g = Graph.__new__(Graph)
        g._init(self.n, [full & ~r & ~(1 << v) for v, r in enumerate(self.rows)])
        return g

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(list(bits(comp)))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def mask_of(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return mask

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()!r})"


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex ``i`` is the ``i``-th edge of ``g`` in lexicographic order."""
    edges = g.edges()
    at: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        at[u].append(i)
        at[v].append(i)
    pairs = []
    for inc in at:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                pairs.append((inc[a], inc[b]))
    return Graph(len(edges), pairs)


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    """Disjoint union; the blocks are relabelled consecutively in list order."""
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


def subdivide(g: Graph, times: int | Mapping[Edge, int]) -> tuple[Graph, SubdivisionModel]:
    """Replace each edge ``uv`` by a path with ``times[uv]`` internal vertices.

    Original vertices keep their labels. New vertices are appended edge by
    edge in lexicographic edge order, each run listed from the smaller
    endpoint towards the larger one. Edges missing from a mapping get 0.
    """
    from .certificates import SubdivisionModel

    edges = g.edges()
    counts: dict[Edge, int] = {}
    if isinstance(times, int):
        counts = {e: times for e in edges}
    else:
        for (u, v), c in times.items():
            key = (min(u, v), max(u, v))
            if not (0 <= key[0] < g.n and key[1] < g.n and g.has_edge(*key)):
                raise ContractError(f"edge {key} is not an edge of the graph")
            counts[key] = c
    if any(c < 0 for c in counts.values()):
        raise ContractError("subdivision counts must be non-negative")

    nxt = g.n
    new_edges = []
    paths = {}
    for u, v in edges:
        c = counts.get((u, v), 0)
        path = [u, *range(nxt, nxt + c), v]
        nxt += c
        new_edges.extend(zip(path, path[1:]))
        paths[(u, v)] = tuple(path)
    host = Graph(nxt, new_edges)
    p = max(counts.values(), default=0)
    return host, SubdivisionModel(g, tuple(range(g.n)), paths, p)


_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 output for state ``x`` (used only to seed the generator)."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator seeded through SplitMix64.

    The state is ``splitmix64(seed mod 2**64)``, replaced by
    ``0x9E3779B97F4A7C15`` if that is zero. Each step applies the shifts
    12/25/27 and multiplies by ``0x2545F4914F6CDD1D`` modulo 2**64.
    ``random()`` returns ``(next() >> 11) * 2**-53``.
    """

    def __init__(self, seed: int):
        self.state = splitmix64(seed & _MASK64) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def random(self) -> float:
        return (self.next() >> 11) * (1.0 / (1 << 53))


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """G(n, p): pairs ``u < v`` are visited in lexicographic order and each is
    kept when the next ``XorShift64Star.random()`` draw is below ``p``."""
    if not 0.0 <= edge_probability <= 1.0:
        raise ContractError("edge probability must lie in [0, 1]")
    rng = XorShift64Star(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_probability:
                edges.append((u, v))
    return Graph(n, edges)
