import json
import math
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_block_number, inseparable, min_separator_brute, to_nx
from twdichotomy.blocks import (block_number, block_report, connectivity_table, exists_k_block,
                                pair_connectivity)
from twdichotomy.errors import ContractError
from twdichotomy.generators import complete, complete_bipartite, cycle, path
from twdichotomy.graph import Graph, random_graph


def separates(g, cut, u, v):
    h = to_nx(g)
    h.remove_nodes_from(cut)
    return not nx.has_path(h, u, v)


def check_menger(g, res):
    u, v = res.u, res.v
    assert len(res.paths) == res.kappa
    inner_seen = set()
    for p in res.paths:
        assert p[0] == u and p[-1] == v
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        inner = set(p[1:-1])
        assert len(inner) == len(p) - 2
        assert not inner & inner_seen
        inner_seen |= inner
    assert len(res.cut) == res.kappa and separates(g, res.cut, u, v)


def test_c6_opposite_pair():
    res = pair_connectivity(cycle(6), 0, 3)
    assert res.kappa == 2
    assert res.cut in ({1, 5}, {2, 4}, {1, 4}, {2, 5})
    check_menger(cycle(6), res)


def test_k33_same_part():
    res = pair_connectivity(complete_bipartite(3, 3), 0, 1)
    assert res.kappa == 3 == min_separator_brute(complete_bipartite(3, 3), 0, 1)[0]


def test_adjacent_pair_infinite():
    res = pair_connectivity(path(3), 0, 1)
    assert res.kappa == math.inf and res.cut is None and res.paths == [(0, 1)]


def test_same_vertex_rejected():
    with pytest.raises(ContractError):
        pair_connectivity(path(3), 1, 1)


@given(st.integers(2, 9), st.floats(0.15, 0.8), st.integers(0, 2**32))
def test_pair_connectivity_matches_brute(n, p, seed):
    g = random_graph(n, p, seed)
    for u, v in combinations(range(n), 2):
        res = pair_connectivity(g, u, v)
        assert res.kappa == min_separator_brute(g, u, v)[0]
        if res.kappa != math.inf:
            check_menger(g, res)


def test_k_block_examples():
    assert exists_k_block(complete(5), 5) == [0, 1, 2, 3, 4]
    assert exists_k_block(cycle(6), 3) is None
    found = exists_k_block(path(5), 2)
    assert found is not None and len(found) == 2 and path(5).has_edge(*found)


def test_c6_has_no_3_block_by_subsets():
    assert not any(inseparable(cycle(6), 3, s) for s in combinations(range(6), 3))


def test_block_numbers_of_families():
    for n in range(1, 8):
        assert block_number(complete(n))[0] == n
    for n in range(4, 9):
        assert block_number(cycle(n))[0] == 2 == brute_block_number(cycle(n))


def test_trees_have_block_number_two():
    for n in range(2, 8):
        for t in nx.nonisomorphic_trees(n):
            g = Graph(n, t.edges())
            assert block_number(g)[0] == 2 == brute_block_number(g)


@given(st.integers(1, 7), st.floats(0.2, 0.9), st.integers(0, 2**32))
def test_block_number_matches_brute(n, p, seed):
    g = random_graph(n, p, seed)
    b, witness = block_number(g)
    assert b == brute_block_number(g)
    assert len(witness) >= b and inseparable(g, b, witness)


@given(st.integers(1, 8), st.floats(0.2, 0.9), st.integers(0, 2**32))
def test_k_block_monotone(n, p, seed):
    g = random_graph(n, p, seed)
    table = connectivity_table(g)
    found = [exists_k_block(g, k, table) is not None for k in range(1, n + 2)]
    for k in range(len(found) - 1):
        assert found[k] or not found[k + 1]
    assert block_number(g)[0] <= n


@given(st.integers(2, 8), st.floats(0.3, 0.9), st.integers(0, 2**32))
def test_block_report_sets_are_maximal(n, p, seed):
    g = random_graph(n, p, seed)
    report = block_report(g)
    assert report.k == report.block_number
    for blk in report.blocks:
        assert len(blk) >= report.k and inseparable(g, report.k, blk)
        for w in set(range(n)) - set(blk):
            assert not inseparable(g, report.k, blk + [w])


def test_block_report_json():
    data = json.loads(json.dumps(block_report(cycle(5), 2).to_json()))
    assert set(data) == {"k", "blocks", "block_number"}
    assert data["blocks"] == [[0, 1, 2, 3, 4]]


def test_k_one_singletons_allowed():
    # Degenerate k = 1: an isolated vertex is a 1-block on its own.
    assert exists_k_block(Graph(1), 1) == [0]
