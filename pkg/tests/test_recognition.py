import json

import networkx as nx
import pytest

from oracles import atlas, from_nx, is_line_of_tripod_brute, is_tripod_brute
from twdichotomy.detection import is_isomorphic
from twdichotomy.generators import complete, complete_bipartite, cycle, line_tripod, path, tripod
from twdichotomy.graph import Graph, disjoint_union, line_graph
from twdichotomy.recognition import (is_complete, is_complete_bipartite, is_line_of_tripod, is_tripod,
                                     reconstruct)


def test_complete_examples():
    assert is_complete(complete(5)).member
    k5_minus = Graph(5, [e for e in complete(5).edges() if e != (1, 3)])
    verdict = is_complete(k5_minus)
    assert not verdict.member and "1" in verdict.reason and "3" in verdict.reason
    assert is_complete(Graph(1)).member
    assert is_complete(Graph(0)).member


def test_complete_bipartite_examples():
    v = is_complete_bipartite(complete_bipartite(3, 3))
    assert v.member and v.shapes[0].params == (3, 3)
    assert not is_complete_bipartite(cycle(5)).member
    assert not is_complete_bipartite(Graph(3)).member
    assert is_complete_bipartite(Graph(3), lenient=True).member
    assert is_complete_bipartite(Graph(1)).member


def test_tripod_examples():
    v = is_tripod(tripod(2, 3, 4))
    assert v.member and v.shapes[0].params == (4, 3, 2)
    assert is_tripod(disjoint_union([path(7), complete_bipartite(1, 3)])).member
    v = is_tripod(complete_bipartite(1, 4))
    assert not v.member and "4 leaves" in v.reason
    assert not is_tripod(cycle(4)).member


def test_line_of_tripod_examples():
    t = line_tripod(1, 1, 1)
    assert is_line_of_tripod(t).member and is_line_of_tripod(t, strict=True).member
    assert not is_line_of_tripod(cycle(4)).member
    assert is_line_of_tripod(path(4)).member
    assert not is_line_of_tripod(path(4), strict=True).member


def tripods_up_to(max_vertices):
    for n in range(1, max_vertices + 1):
        yield path(n)
        for i in range(1, n):
            for j in range(1, i + 1):
                k = n - 1 - i - j
                if 1 <= k <= j:
                    yield tripod(i, j, k)


def test_line_graphs_of_small_tripods_are_members():
    count = 0
    for s in tripods_up_to(10):
        assert is_line_of_tripod(line_graph(s)).member
        count += 1
    assert count > 30


def test_tripod_and_line_recognisers_against_definitions_small():
    # The full n <= 7 sweep lives in the acceptance suite; n <= 5 here.
    for h in atlas(5):
        g = from_nx(h)
        assert is_tripod(g).member == is_tripod_brute(h)
        assert is_line_of_tripod(g).member == is_line_of_tripod_brute(h)
        assert is_line_of_tripod(g, strict=True).member == is_line_of_tripod_brute(h, strict=True)


def test_complete_and_bipartite_overlap_only_tiny():
    both = [from_nx(h) for h in atlas(7)
            if is_complete(from_nx(h)).member and is_complete_bipartite(from_nx(h)).member]
    assert sorted(g.n for g in both) == [0, 1, 2]


def test_bipartite_matches_networkx():
    for h in atlas(6):
        g = from_nx(h)
        expected = (g.n <= 1) or (
            nx.is_connected(h) and nx.is_bipartite(h)
            and h.number_of_edges() == _product_of_parts(h))
        assert is_complete_bipartite(g).member == expected


def _product_of_parts(h):
    a, b = nx.bipartite.sets(h)
    return len(a) * len(b)


def test_member_shapes_reconstruct_input():
    for h in atlas(7):
        g = from_nx(h)
        for verdict in (is_tripod(g), is_line_of_tripod(g), is_complete(g), is_complete_bipartite(g)):
            if verdict.member and g.n:
                assert is_isomorphic(reconstruct(verdict.shapes), g)


def test_verdict_json_schema():
    data = json.loads(json.dumps(is_tripod(cycle(4)).to_json()))
    assert set(data) == {"member", "shapes", "reason"}
    assert data["member"] is False and data["shapes"][0]["tag"] == "other"


def test_reconstruct_rejects_other():
    with pytest.raises(ValueError):
        reconstruct(is_tripod(cycle(4)).shapes)
