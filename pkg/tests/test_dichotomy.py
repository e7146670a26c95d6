import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import atlas, from_nx, is_line_of_tripod_brute, is_tripod_brute
from twdichotomy.decomposition import exact_treewidth
from twdichotomy.detection import is_f_free, is_isomorphic
from twdichotomy.dichotomy import (CRITERIA, NamedGraph, decide_bounded, family_widths, forbidden_set,
                                   split_forbidden, survey, unboundedness_family)
from twdichotomy.errors import ContractError
from twdichotomy.generators import complete, cycle, path
from twdichotomy.graph import Graph

SPARSE_F = ["K:3", "KK:2,2", "S:1,1,1", "T:1,1,1"]

# Regression values for the seed-42 survey over n = 1..14 with 200 samples each.
FROZEN_ACCEPTED = [200, 200, 132, 118, 85, 67, 49, 36, 33, 24, 13, 12, 12, 5]
FROZEN_TW_MAX = [0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 1, 2, 1, 1]


def test_all_four_criteria_bounded():
    v = decide_bounded(["K:4", "KK:3,3", "S:1,1,1", "T:1,1,1"])
    assert v.bounded and v.missing == []
    assert v.slots == {"complete": "K:4", "complete_bipartite": "KK:3,3",
                       "tripod": "S:1,1,1", "line_of_tripod": "T:1,1,1"}


def test_missing_line_of_tripod():
    v = decide_bounded(["K:4", "KK:3,3", "S:1,1,1"])
    assert not v.bounded and v.missing == ["line_of_tripod"]


def test_short_path_fills_two_slots():
    v = decide_bounded(["P:5", "K:3", "KK:2,2"])
    assert v.bounded and v.slots["tripod"] == v.slots["line_of_tripod"] == "P:5"


def test_verdict_json():
    data = json.loads(json.dumps(decide_bounded(["K:4", "KK:3,3"]).to_json()))
    assert data["overall"] == "Unbounded"
    assert data["missing"] == ["tripod", "line_of_tripod"]
    assert set(data) >= set(CRITERIA) | {"suggested_p", "notes"}


def test_edgeless_corner():
    e2 = NamedGraph("E2", Graph(2))
    strict = decide_bounded(["K:3", e2, "S:1,1,2", "T:1,1,1"])
    assert strict.bounded and strict.slots["complete_bipartite"] == "E2" and strict.notes
    lenient = decide_bounded(["K:3", e2, "S:1,1,2", "T:1,1,1"], lenient_bipartite=True)
    assert lenient.bounded and not lenient.notes
    assert decide_bounded([e2, "S:1,1,2", "T:1,1,1"]).missing == ["complete", "complete_bipartite"]


def test_empty_forbidden_set_rejected():
    with pytest.raises(ContractError):
        decide_bounded([])


def test_split_forbidden():
    assert split_forbidden("K:4,bipartite:3,3,S:1,2,3") == ["K:4", "bipartite:3,3", "S:1,2,3"]
    assert split_forbidden(" A_ , K:3 ,") == ["A_", "K:3"]


def test_forbidden_set_names():
    named = forbidden_set([complete(3), "P:4", NamedGraph("x", path(2))])
    assert [f.name for f in named] == ["F0", "P:4", "x"]


ATLAS = [from_nx(h) for h in atlas(6) if h.number_of_nodes() > 0]
ATLAS_NX = [h for h in atlas(6) if h.number_of_nodes() > 0]


@given(st.lists(st.integers(0, len(ATLAS) - 1), min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_verdict_order_independent(idx, rnd):
    members = [ATLAS[i] for i in idx]
    shuffled = list(members)
    rnd.shuffle(shuffled)
    assert decide_bounded(members).bounded == decide_bounded(shuffled).bounded
    assert decide_bounded(members).missing == decide_bounded(shuffled).missing


@given(st.lists(st.integers(0, len(ATLAS) - 1), min_size=1, max_size=5))
def test_slots_agree_with_brute_recognition(idx):
    v = decide_bounded([ATLAS[i] for i in idx])
    assert (v.slots["tripod"] is not None) == any(is_tripod_brute(ATLAS_NX[i]) for i in idx)
    assert (v.slots["line_of_tripod"] is not None) == any(is_line_of_tripod_brute(ATLAS_NX[i]) for i in idx)


def test_family_examples():
    assert unboundedness_family("complete", 2) == complete(4)
    s4 = unboundedness_family("tripod", 2)
    assert s4.n == 10 and exact_treewidth(s4)[0] == 3
    assert is_isomorphic(unboundedness_family("line_of_tripod", 1), cycle(6))
    with pytest.raises(ContractError):
        unboundedness_family("nosuch", 1)
    with pytest.raises(ContractError):
        unboundedness_family("complete", 0)


@pytest.mark.parametrize("i", range(1, 5))
def test_family_exact_widths(i):
    assert exact_treewidth(unboundedness_family("complete", i))[0] == i + 1
    assert exact_treewidth(unboundedness_family("complete_bipartite", i))[0] == i + 2


def test_families_strictly_increase():
    for c in CRITERIA:
        widths = [tw for _, _, tw in family_widths(c, range(1, 4))]
        assert widths == sorted(set(widths)), c


@pytest.mark.parametrize("forbidden,levels", [
    (["K:4", "KK:3,3", "S:1,1,1"], (1, 2)),
    (["K:4", "KK:3,3", "T:1,1,1"], (1, 2, 3)),
    (["KK:2,2", "S:1,1,1", "T:1,1,1"], (1, 2, 3)),
    (["K:3", "S:1,1,2", "T:1,1,1"], (1, 2, 3)),
])
def test_missing_family_members_are_free(forbidden, levels):
    graphs = [f.graph for f in forbidden_set(forbidden)]
    (missing,) = decide_bounded(forbidden).missing
    for i in levels:
        assert is_f_free(unboundedness_family(missing, i), graphs)[0]


def test_line_family_meets_clique_at_three():
    # The line graph of a subdivided K_5 has a K_4 around each branch vertex.
    assert not is_f_free(unboundedness_family("line_of_tripod", 3), [complete(4)])[0]


def test_survey_zero_samples():
    assert survey(SPARSE_F, 1, 5, 0, 1) == []


def test_survey_rejects_bad_range():
    with pytest.raises(ContractError):
        survey(SPARSE_F, 5, 2, 10, 1)


def test_survey_deterministic():
    a = survey(SPARSE_F, 3, 8, 30, 7)
    b = survey(SPARSE_F, 3, 8, 30, 7)
    assert a == b and [r.n for r in a] == list(range(3, 9))
    assert survey(SPARSE_F, 3, 8, 30, 8) != a


def test_survey_regression():
    rows = survey(SPARSE_F, 1, 14, 200, 42)
    assert [r.accepted for r in rows] == FROZEN_ACCEPTED
    assert [r.tw_max for r in rows] == FROZEN_TW_MAX
    assert all(r.budget_exceeded == 0 for r in rows)


def test_survey_rows_are_consistent():
    for r in survey(["K:4"], 3, 7, 25, 3):
        assert r.accepted + r.budget_exceeded <= r.samples
        if r.accepted:
            assert 0 <= r.tw_min <= r.tw_med <= r.tw_max <= r.n - 1


def test_survey_budget_is_reported():
    rows = survey(["C:4"], 12, 12, 5, 1, budget=1, edge_probability=0.6)
    assert rows[0].budget_exceeded + rows[0].accepted <= 5
    assert rows[0].budget_exceeded > 0


def test_edgeless_member_matches_lenient_recognition():
    assert decide_bounded([Graph(3)], lenient_bipartite=True).slots["complete_bipartite"] == "F0"
    assert decide_bounded([Graph(3)]).slots["complete_bipartite"] is None
