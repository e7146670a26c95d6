"""Constructive extraction procedures.

Three procedures turn large structures into bicliques or subdivisions:

* :func:`lemma_clique_extract`: pairwise-linked disjoint sets give a
  ``K_{b,b}`` subgraph by two rounds of pigeonhole colouring;
* :func:`bigclique_extract`: a ``(<= p)``-subdivision of ``K_m`` gives a
  ``K_{p,p}`` subgraph or an induced proper ``(<= p)``-subdivision of
  ``K_{r,r}``;
* :func:`block_subdivision_extract`: a set of highly inseparable vertices
  gives a ``(<= p)``-subdivision of ``K_m`` built from Menger paths.

All of them run opportunistically on whatever sizes they are given. When a
step cannot be completed the result is an ``insufficient`` outcome naming
the stage; every other outcome has been checked by the matching verifier
from :mod:`twdichotomy.detection` before it is returned.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .blocks import pair_connectivity
from .certificates import Embedding, SubdivisionModel
from .detection import (is_biclique_witness, max_clique, max_independent_set, verify_embedding,
                        verify_subdivision_model)
from .errors import ContractError
from .generators import complete, complete_bipartite, tripod
from .graph import Edge, Graph

BICLIQUE = "biclique_subgraph"
INDUCED_SUBDIVISION = "induced_subdivision"
KM_SUBDIVISION = "km_subdivision"
INSUFFICIENT = "insufficient"


@dataclass
class ExtractionOutcome:
    """Result of an extraction run.

    ``witness`` is an :class:`Embedding` for bicliques, a
    :class:`SubdivisionModel` for subdivisions and ``None`` when
    insufficient. ``trace`` records the intermediate sets.
    """

    kind: str
    witness: Embedding | SubdivisionModel | None = None
    stage: str | None = None
    reason: str | None = None
    trace: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.kind != INSUFFICIENT

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind,
                "witness": None if self.witness is None else self.witness.to_json(),
                "stage": self.stage, "reason": self.reason, "trace": _jsonable(self.trace)}


def _jsonable(x: Any) -> Any:
    if isinstance(x, Mapping):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def _insufficient(stage: str, reason: str, trace: dict[str, Any]) -> ExtractionOutcome:
    return ExtractionOutcome(INSUFFICIENT, None, stage, reason, trace)


def _linked(g: Graph, s: int, t: int) -> bool:
    """Some edge joins vertex masks ``s`` and ``t``."""
    for v in _members(s):
        if g.rows[v] & t:
            return True
    return False


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _biclique_embedding(left: Sequence[int], right: Sequence[int]) -> Embedding:
    return Embedding(complete_bipartite(len(left), len(right)), tuple(left) + tuple(right), "subgraph")


# --- pairwise-linked sets -> K_{b,b} -----------------------------------------

def lemma_clique_extract(g: Graph, sets: Sequence[Sequence[int]], a: int, b: int) -> ExtractionOutcome:
    """Extract a ``K_{b,b}`` subgraph from pairwise-linked disjoint sets.

    The family is split into halves ``A`` (first) and ``B`` (second). Sets in
    the second half are coloured by the tuple of their smallest-index
    neighbour in each chosen first-half set; a colour class with ``b`` sets
    fixes one common neighbour per chosen set (``U``). ``U`` is coloured the
    same way against those ``b`` sets, and a class ``U1`` of size ``b`` plus
    one common neighbour per set (``U2``) form the biclique. Several
    collection sizes are tried before giving up.
    """
    if a < 1 or b < 1:
        raise ContractError("a and b must be positive")
    fam = [tuple(s) for s in sets]
    seen: set[int] = set()
    for i, s in enumerate(fam):
        if not s:
            raise ContractError(f"set {i} is empty")
        if len(s) > a:
            raise ContractError(f"set {i} has {len(s)} > a = {a} vertices")
        for v in s:
            if not 0 <= v < g.n:
                raise ContractError(f"vertex {v} of set {i} is outside the graph")
            if v in seen:
                raise ContractError(f"sets are not pairwise disjoint (vertex {v})")
            seen.add(v)
    masks = [g.mask_of(s) for s in fam]
    for i, j in combinations(range(len(fam)), 2):
        if not _linked(g, masks[i], masks[j]):
            raise ContractError(f"no edge between sets {i} and {j}")

    trace: dict[str, Any] = {"family_size": len(fam)}
    if len(fam) < 2 * b:
        return _insufficient("split", f"family too small: {len(fam)} sets, need at least {2 * b}", trace)

    half = len(fam) // 2
    fam_a, fam_b = list(range(half)), list(range(half, len(fam)))
    trace.update({"calA": fam_a, "calB": fam_b})

    def first_nbr(v_or_set: int, target: int) -> int:
        # v_or_set is a vertex mask; smallest vertex of ``target`` adjacent to it.
        nb = 0
        for v in _members(v_or_set):
            nb |= g.rows[v]
        hit = nb & masks[target]
        return (hit & -hit).bit_length() - 1

    last_stage = "color-B"
    for r in range(len(fam_a), b - 1, -1):
        chosen_a = fam_a[:r]
        classes: dict[tuple[int, ...], list[int]] = {}
        for s in fam_b:
            key = tuple(first_nbr(masks[s], t) for t in chosen_a)
            classes.setdefault(key, []).append(s)
        for key, members in sorted(classes.items(), key=lambda kv: (-len(kv[1]), kv[0])):
            if len(members) < b:
                break
            chosen_b = members[:b]
            u = list(key)
            u_classes: dict[tuple[int, ...], list[int]] = {}
            for x in u:
                u_classes.setdefault(tuple(first_nbr(1 << x, s) for s in chosen_b), []).append(x)
            last_stage = "color-U"
            for ukey, umembers in sorted(u_classes.items(), key=lambda kv: (-len(kv[1]), kv[0])):
                if len(umembers) < b:
                    break
                u1 = umembers[:b]
                u2 = list(ukey)
                emb = _biclique_embedding(u1, u2)
                if is_biclique_witness(g, emb, b):
                    trace.update({"A": chosen_a, "B": chosen_b, "U": u, "U1": u1, "U2": u2})
                    return ExtractionOutcome(BICLIQUE, emb, "U1U2", None, trace)
    if last_stage == "color-B":
        reason = f"no colour class of the second half reaches {b} sets"
    else:
        reason = f"no colour class of U reaches {b} vertices"
    return _insufficient(last_stage, reason, trace)


# --- subdivided K_m -> K_{p,p} or induced subdivided K_{r,r} ----------------

def shortcut_path(g: Graph, path: Sequence[int]) -> tuple[int, ...]:
    """Chordless path through a subset of ``path``'s vertices, same endpoints.

    From each vertex jump to its furthest later neighbour on the path; no
    chord can survive because any chord would have been jumped along.
    """
    out = [path[0]]
    i = 0
    while i < len(path) - 1:
        j = max(k for k in range(i + 1, len(path)) if g.has_edge(path[i], path[k]))
        out.append(path[j])
        i = j
    return tuple(out)


def _is_chordless(g: Graph, path: Sequence[int]) -> bool:
    return all(not g.has_edge(path[i], path[j])
               for i in range(len(path)) for j in range(i + 2, len(path)))


def bigclique_extract(host: Graph, model: SubdivisionModel, p: int, r: int) -> ExtractionOutcome:
    """Staged search for ``K_{p,p}`` or an induced proper subdivided ``K_{r,r}``.

    ``model`` must be a ``(<= p)``-subdivision of a complete graph in
    ``host`` (subgraph mode). Paths with chords are first shortcut to
    chordless paths through their own vertices (recorded in the trace).

    Stages: ``ramsey`` looks for a ``2p``-clique among the branch vertices,
    otherwise an independent set ``A``; ``claim`` splits ``A`` into ``B`` and
    ``C`` and shrinks ``C`` one ``u in B`` at a time to a set whose paths
    from ``u`` are pairwise unlinked; ``final`` picks ``V`` from the last
    ``C``, an unlinked ``W`` from ``B``, and assembles the model. Linked
    cliques met along the way are handed to :func:`lemma_clique_extract`.
    """
    if p < 0 or r < 1:
        raise ContractError("need p >= 0 and r >= 1")
    m = model.pattern.n
    if model.pattern != complete(m):
        raise ContractError("model pattern is not a complete graph")
    bad = verify_subdivision_model(host, model, p=p)
    if bad is not None:
        raise ContractError(f"model does not verify: {bad}")

    branch = model.branch
    paths: dict[Edge, tuple[int, ...]] = {}
    shortened = []
    for e, path in model.paths.items():
        short = shortcut_path(host, path)
        if short != path:
            shortened.append(list(e))
        paths[e] = short
    trace: dict[str, Any] = {"shortcut_edges": shortened}

    def route(i: int, j: int) -> tuple[int, ...]:
        # Path from branch[i] to branch[j].
        return paths[(i, j)] if i < j else paths[(j, i)][::-1]

    # ramsey: a 2p-clique or an independent set among branch vertices.
    sub = host.induced(branch)
    if p >= 1:
        clique = max_clique(sub, target=2 * p)
        if len(clique) >= 2 * p:
            verts = [branch[i] for i in clique[:2 * p]]
            emb = _biclique_embedding(verts[:p], verts[p:])
            trace["clique"] = verts
            return ExtractionOutcome(BICLIQUE, emb, "ramsey", None, trace)
    indep = max_independent_set(sub)
    trace["A"] = [branch[i] for i in indep]
    if len(indep) < 2 * r:
        return _insufficient("ramsey", f"branch set too small: independent set of size {len(indep)}, "
                             f"need {2 * r}", trace)

    fallback: ExtractionOutcome | None = None
    for q in range(r, len(indep) - r + 1):
        b_set, c_set = indep[:q], indep[q:]
        run_trace = {"B": [branch[i] for i in b_set], "C": [branch[i] for i in c_set], "C_i": []}
        current = list(c_set)
        failed = None
        for u in b_set:
            tails = {v: host.mask_of(route(u, v)[1:]) for v in current}
            link = Graph(len(current), [(x, y) for x, y in combinations(range(len(current)), 2)
                                        if _linked(host, tails[current[x]], tails[current[y]])])
            found = _via_lemma(host, link, [route(u, v)[1:] for v in current], p + 1, p)
            if found is not None:
                found.trace = {**trace, **run_trace, "linked_at": branch[u], "lemma": found.trace}
                return found
            keep = max_independent_set(link)
            current = [current[x] for x in keep]
            run_trace["C_i"].append([branch[v] for v in current])
            if len(current) < r:
                failed = _insufficient("claim", f"C_i shrank to {len(current)} < r = {r} at u = {branch[u]}",
                                       {**trace, **run_trace})
                break
        if failed is not None:
            fallback = fallback or failed
            continue

        v_set = current[:r]
        s_masks = {u: host.mask_of(x for v in v_set for x in route(u, v)[1:-1]) for u in b_set}
        # Also reject an internal vertex seeing another branch vertex of U.
        link = Graph(len(b_set), [
            (x, y) for x, y in combinations(range(len(b_set)), 2)
            if _linked(host, s_masks[b_set[x]] | 1 << branch[b_set[x]],
                       s_masks[b_set[y]] | 1 << branch[b_set[y]])])
        run_trace.update({"V": [branch[v] for v in v_set], "U": [branch[u] for u in b_set],
                          "S": {branch[u]: _members(s_masks[u]) for u in b_set}})
        found = _via_lemma(host, link, [_members(s_masks[u] | 1 << branch[u]) for u in b_set], r * p + 1, p)
        if found is not None:
            found.trace = {**trace, **run_trace, "lemma": found.trace}
            return found
        w_idx = max_independent_set(link, target=r)
        if len(w_idx) < r:
            fallback = fallback or _insufficient(
                "final", f"unlinked subset of U has {len(w_idx)} < r = {r} vertices", {**trace, **run_trace})
            continue
        w_set = [b_set[x] for x in w_idx[:r]]
        run_trace["W"] = [branch[u] for u in w_set]
        result = SubdivisionModel(
            complete_bipartite(r, r), tuple(branch[i] for i in w_set + v_set),
            {(x, r + y): route(w_set[x], v_set[y]) for x in range(r) for y in range(r)}, p)
        bad = verify_subdivision_model(host, result, require_induced=True, require_proper=True, p=p)
        if bad is None:
            return ExtractionOutcome(INDUCED_SUBDIVISION, result, "final", None, {**trace, **run_trace})
        fallback = fallback or _insufficient("final", f"assembled model failed verification: {bad}",
                                             {**trace, **run_trace})
    assert fallback is not None
    return fallback


def _via_lemma(host: Graph, link: Graph, sets: list[Sequence[int]], a: int, p: int) -> ExtractionOutcome | None:
    """Run the linked-sets lemma on a clique of ``link`` if one of size ``2p`` exists."""
    if p < 1:
        return None
    clique = max_clique(link, target=2 * p)
    if len(clique) < 2 * p:
        return None
    chosen = [sets[i] for i in clique]
    if any(not s or len(s) > a for s in chosen):
        return None
    out = lemma_clique_extract(host, chosen, a, p)
    return out if out.ok else None


# --- inseparable set -> subdivided K_m ---------------------------------------

def _bfs_path(g: Graph, s: int, t: int, allowed: int, max_edges: int) -> tuple[int, ...] | None:
    parent = {s: s}
    queue = deque([(s, 0)])
    while queue:
        x, d = queue.popleft()
        if x == t:
            out = [t]
            while out[-1] != s:
                out.append(parent[out[-1]])
            return tuple(reversed(out))
        if d == max_edges:
            continue
        for y in g.neighbors(x):
            if y not in parent and (y == t or allowed >> y & 1):
                parent[y] = x
                queue.append((y, d + 1))
    return None


def block_subdivision_extract(g: Graph, block: Sequence[int], p: int, m_target: int) -> ExtractionOutcome:
    """Build a ``(<= p)``-subdivision of ``K_{m_target}`` on the first
    ``m_target`` vertices of ``block``.

    Every pair of those vertices must be adjacent or joined by at least
    ``m_target - 1`` internally disjoint paths. Pairs are handled in
    lexicographic order: adjacent pairs use their edge; otherwise the Menger
    paths are made chordless, filtered to at most ``p + 1`` edges with no
    internal vertex among the branch vertices, and the shortest (then
    lexicographically first) one avoiding earlier paths is taken. A short
    path found by breadth-first search in what is left is the fallback.
    """
    if p < 0 or m_target < 1:
        raise ContractError("need p >= 0 and m_target >= 1")
    verts = list(dict.fromkeys(block))
    if len(verts) != len(block) or any(not 0 <= v < g.n for v in verts):
        raise ContractError("block must list distinct vertices of the graph")
    trace: dict[str, Any] = {"block": verts}
    if len(verts) < m_target:
        return _insufficient("select", f"block has {len(verts)} < {m_target} vertices", trace)

    need = m_target - 1
    menger: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for x, y in combinations(verts[:m_target], 2):
        res = pair_connectivity(g, x, y)
        if res.kappa < need:
            raise ContractError(f"vertices {x} and {y} are separated by {res.kappa} < {need} vertices")
        menger[(x, y)] = res.paths

    branch = verts[:m_target]
    branch_mask = g.mask_of(branch)
    used = 0
    chosen: dict[Edge, tuple[int, ...]] = {}
    trace["branch"] = branch
    for i, j in combinations(range(m_target), 2):
        x, y = branch[i], branch[j]
        if g.has_edge(x, y):
            chosen[(i, j)] = (x, y)
            continue
        options = sorted({shortcut_path(g, path) for path in menger[(x, y)]}, key=lambda t: (len(t), t))
        pick = None
        for path in options:
            inner = g.mask_of(path[1:-1])
            if len(path) - 1 <= p + 1 and not inner & (branch_mask | used):
                pick = path
                break
        if pick is None:
            pick = _bfs_path(g, x, y, ((1 << g.n) - 1) & ~branch_mask & ~used, p + 1)
        if pick is None:
            trace["blocking_pair"] = [x, y]
            return _insufficient("paths", f"no free path with at most {p} internal vertices between "
                                 f"{x} and {y}", trace)
        used |= g.mask_of(pick[1:-1])
        chosen[(i, j)] = pick

    model = SubdivisionModel(complete(m_target), tuple(branch), chosen, p)
    bad = verify_subdivision_model(g, model, p=p)
    if bad is not None:  # pragma: no cover - construction keeps paths disjoint
        return _insufficient("verify", str(bad), trace)
    return ExtractionOutcome(KM_SUBDIVISION, model, "paths", None, trace)


# --- three long prefixes -> induced S_p or linked pairs ----------------------

@dataclass(frozen=True)
class TripodProbe:
    """Either an induced tripod on ``x`` and three prefixes, or the list of
    prefix pairs joined by an edge (``embedding`` is then ``None``)."""

    embedding: Embedding | None
    linked_pairs: list[tuple[int, int]]
    triple: tuple[int, int, int] | None = None

    def to_json(self) -> dict[str, Any]:
        return {"embedding": None if self.embedding is None else self.embedding.to_json(),
                "linked_pairs": [list(e) for e in self.linked_pairs],
                "triple": None if self.triple is None else list(self.triple)}


def long_path_tripod_probe(g: Graph, x: int, paths: Sequence[Sequence[int]]) -> TripodProbe:
    """Look for three prefixes with no edges between them.

    Each prefix lists path vertices after ``x`` (not including it). Together
    with ``x`` three mutually unlinked prefixes induce a tripod whose arms
    are the prefixes.
    """
    if len(paths) < 3:
        raise ContractError("need at least three path prefixes")
    pre = [tuple(pth) for pth in paths]
    seen = {x}
    for i, pth in enumerate(pre):
        if not pth:
            raise ContractError(f"prefix {i} is empty")
        for v in pth:
            if not 0 <= v < g.n or v in seen:
                raise ContractError(f"prefixes must be disjoint and avoid x (vertex {v})")
            seen.add(v)
        walk = (x,) + pth
        if any(not g.has_edge(s, t) for s, t in zip(walk, walk[1:])):
            raise ContractError(f"prefix {i} is not a path starting next to x")
        if not _is_chordless(g, walk):
            raise ContractError(f"prefix {i} together with x has a chord")

    masks = [g.mask_of(pth) for pth in pre]
    linked = [(i, j) for i, j in combinations(range(len(pre)), 2) if _linked(g, masks[i], masks[j])]
    link_set = set(linked)
    for tri in combinations(range(len(pre)), 3):
        if not any(pair in link_set for pair in combinations(tri, 2)):
            arms = [pre[i] for i in tri]
            emb = Embedding(tripod(*(len(a) for a in arms)), (x,) + arms[0] + arms[1] + arms[2], "induced")
            if verify_embedding(g, emb) is None:
                return TripodProbe(emb, linked, tri)
    return TripodProbe(None, linked)
