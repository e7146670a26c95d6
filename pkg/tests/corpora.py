"""Seeded input families and independent outcome checks for extraction runs."""

import random
from itertools import combinations

import networkx as nx

from oracles import to_nx
from twdichotomy.blocks import exists_k_block
from twdichotomy.detection import verify_subdivision_model
from twdichotomy.extraction import (BICLIQUE, INDUCED_SUBDIVISION, INSUFFICIENT, KM_SUBDIVISION,
                                    bigclique_extract, block_subdivision_extract, lemma_clique_extract)
from twdichotomy.generators import complete, complete_bipartite
from twdichotomy.graph import Graph, random_graph, subdivide


def biclique_ok(g, emb, t):
    """Direct check: the first t images are joined to the last t images."""
    img = emb.mapping
    if len(img) != 2 * t or len(set(img)) != 2 * t:
        return False
    return all(g.has_edge(u, v) for u in img[:t] for v in img[t:])


def induced_subdivision_ok(g, model, r, p):
    """Check a proper induced (<= p)-subdivision of K_{r,r} with networkx."""
    if model.pattern != complete_bipartite(r, r):
        return False
    verts = set(model.branch)
    for pth in model.paths.values():
        if not 2 <= len(pth) - 1 <= p + 1:
            return False
        verts |= set(pth)
    h = to_nx(g).subgraph(verts)
    path_edges = {frozenset(e) for pth in model.paths.values() for e in zip(pth, pth[1:])}
    return {frozenset(e) for e in h.edges()} == path_edges


def km_subdivision_ok(g, model, m, p):
    if model.pattern != complete(m):
        return False
    inner_seen = set()
    for pth in model.paths.values():
        inner = set(pth[1:-1])
        if len(pth) - 2 > p or inner & inner_seen or inner & set(model.branch):
            return False
        if not all(g.has_edge(a, b) for a, b in zip(pth, pth[1:])):
            return False
        inner_seen |= inner
    return verify_subdivision_model(g, model, p=p) is None


def linked_family(g, a, rnd):
    """Random disjoint sets of size <= a, greedily kept while pairwise linked."""
    order = list(range(g.n))
    rnd.shuffle(order)
    chunks, i = [], 0
    while i < len(order):
        size = rnd.randint(1, a)
        chunks.append(order[i:i + size])
        i += size
    keep = []
    for c in chunks:
        if all(any(g.has_edge(u, v) for u in c for v in d) for d in keep):
            keep.append(c)
    return keep


def clique_runs(count, seed):
    rnd = random.Random(seed)
    for _ in range(count):
        n = rnd.randint(6, 22)
        g = random_graph(n, rnd.uniform(0.4, 0.95), rnd.getrandbits(32))
        a, b = rnd.randint(1, 3), rnd.randint(1, 3)
        sets = linked_family(g, a, rnd)
        yield ("clique", g, (sets, a, b), lemma_clique_extract(g, sets, a, b))


def bigclique_runs(count, seed):
    rnd = random.Random(seed)
    for _ in range(count):
        m = rnd.randint(2, 7)
        p = rnd.randint(1, 2)
        r = rnd.randint(1, 3)
        counts = {e: rnd.randint(1, p) for e in complete(m).edges()}
        host, model = subdivide(complete(m), counts)
        extra = [(u, v) for u, v in combinations(range(host.n), 2) if rnd.random() < 0.03]
        host = Graph(host.n, host.edges() + extra)
        yield ("bigclique", host, (model, p, r), bigclique_extract(host, model, p, r))


def block_runs(count, seed):
    rnd = random.Random(seed)
    done = 0
    while done < count:
        n = rnd.randint(4, 12)
        g = random_graph(n, rnd.uniform(0.3, 0.9), rnd.getrandbits(32))
        k = rnd.randint(2, 5)
        blk = exists_k_block(g, k)
        if blk is None:
            continue
        p = rnd.randint(0, 3)
        done += 1
        yield ("block", g, (blk, p, k), block_subdivision_extract(g, blk, p, k))


def outcome_sound(name, g, args, out):
    """Every non-insufficient outcome is a valid witness of its claimed kind."""
    if out.kind == INSUFFICIENT:
        return out.witness is None and out.stage is not None
    if out.kind == BICLIQUE:
        t = out.witness.pattern.n // 2
        expected = {"clique": args[-1], "bigclique": args[1]}.get(name)
        return biclique_ok(g, out.witness, t) and (expected is None or t == expected)
    if out.kind == INDUCED_SUBDIVISION:
        return name == "bigclique" and induced_subdivision_ok(g, out.witness, args[2], args[1])
    if out.kind == KM_SUBDIVISION:
        return name == "block" and km_subdivision_ok(g, out.witness, args[2], args[1])
    return False


def matching_in_biclique(m):
    """K_{m,m} on sides 0..m-1 and m..2m-1 with the perfect matching i -- m+i as sets."""
    return complete_bipartite(m, m), [[i, m + i] for i in range(m)]


def has_triangle(g):
    return any(nx.triangles(to_nx(g)).values())
