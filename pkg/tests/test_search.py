from itertools import permutations

import pytest
from helpers import connected_graphs, is_ordering_brute, orderings_brute, set_less
from hypothesis import given, settings
from hypothesis import strategies as st

from leafsearch.errors import CapExceededError, DisconnectedGraphError
from leafsearch.families import complete_graph, cycle_graph, fig1, path_graph
from leafsearch.graph import Graph, as_ordering, is_peo, layers_from
from leafsearch.search import (
    ALL_KINDS,
    Arbitrary,
    LabelState,
    PlusRho,
    SearchKind,
    _eligible_fast,
    _eligible_pairwise,
    _mask,
    eligible,
    enumerate_orderings,
    find_ordering,
    is_search_ordering,
    label_key,
    label_less,
    run_search,
)

KINDS = [k.value for k in ALL_KINDS]
labels_st = st.frozensets(st.integers(1, 9), max_size=6)


def test_label_less_examples():
    assert label_less("mcs", {1}, {1, 2})
    assert not label_less("mns", {1, 3}, {2})
    assert not label_less("mns", {2}, {1, 3})
    assert label_less("lbfs", {2}, {1})


@given(st.sampled_from(KINDS), labels_st, labels_st)
def test_label_less_matches_set_definition(kind, a, b):
    assert label_less(kind, a, b) == set_less(kind, a, b)


@given(st.sampled_from(KINDS), labels_st, labels_st, labels_st)
def test_label_orders_are_strict_partial_orders(kind, a, b, c):
    assert not label_less(kind, a, a)
    if label_less(kind, a, b):
        assert not label_less(kind, b, a)
        if label_less(kind, b, c):
            assert label_less(kind, a, c)


@given(st.sampled_from([k for k in ALL_KINDS if k is not SearchKind.MNS]), labels_st, labels_st)
def test_label_key_represents_the_order(kind, a, b):
    key = label_key(kind, 9)
    assert label_less(kind, a, b) == (key(_mask(a)) < key(_mask(b)))


@given(connected_graphs(max_n=7), st.sampled_from(list(ALL_KINDS)), st.data())
def test_fast_eligibility_matches_pairwise(g, kind, data):
    labels = [data.draw(st.integers(0, (1 << (g.n + 1)) - 1)) & ~1 for _ in range(g.n)]
    pool = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    fast = _eligible_fast(kind, label_key(kind, g.n), labels, pool)
    assert fast == _eligible_pairwise(kind, labels, pool)


def test_eligible_examples():
    k2 = complete_graph(2)
    state = LabelState.initial(2).number(k2, 0)
    assert eligible(k2, "gs", state) == {1}
    for kind in KINDS:
        assert eligible(fig1(), kind, LabelState.initial(6)) == set(range(6))
    p3 = path_graph(3)
    state = LabelState.initial(3).number(p3, 0).number(p3, 1)
    assert eligible(p3, "bfs", state) == {2}


def test_run_search_fig1_bfs():
    g = fig1()
    rho = PlusRho(as_ordering(g, "w,v,x,z,u,y"))
    assert run_search(g, "bfs", rho).format(g) == "w,v,x,z,u,y"


def test_run_search_k2_and_p3():
    for kind in KINDS:
        assert run_search(complete_graph(2), kind).seq == (0, 1)
    g = path_graph(3)
    assert run_search(g, "dfs", PlusRho(["a", "b", "c"])).format(g) == "a,b,c"


def test_run_search_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        run_search(Graph.from_edges(3, [(0, 1)]), "bfs")


@given(connected_graphs(max_n=7), st.sampled_from(KINDS), st.integers(0, 10**6))
@settings(max_examples=80)
def test_run_search_outputs_are_valid_and_deterministic(g, kind, seed):
    rho = list(range(g.n))[::-1]
    a = run_search(g, kind, PlusRho(rho))
    assert a == run_search(g, kind, PlusRho(rho))
    assert is_search_ordering(g, kind, a)
    assert is_ordering_brute(g, kind, a.seq)
    b = run_search(g, kind, Arbitrary(seed))
    assert b == run_search(g, kind, Arbitrary(seed))
    assert is_search_ordering(g, kind, b)


def test_plus_search_takes_leftmost_in_rho():
    g = complete_graph(4)
    assert run_search(g, "mns", PlusRho([2, 0, 3, 1])).seq == (2, 0, 3, 1)


def test_is_search_ordering_examples():
    g = path_graph(3)
    assert is_search_ordering(g, "bfs", ["b", "a", "c"])
    assert not is_search_ordering(g, "bfs", ["a", "c", "b"])
    g = fig1()
    assert is_search_ordering(g, "bfs", "w,v,x,z,u,y")


def test_gs_validity_is_earlier_neighbour_rule():
    g = fig1()
    for p in permutations(range(g.n)):
        rule = all(any(w in p[:i] for w in g.adj[v]) for i, v in enumerate(p) if i)
        assert is_search_ordering(g, "gs", p) == rule


def test_enumerate_examples():
    assert {s.seq for s in enumerate_orderings(complete_graph(2), "dfs")} == {(0, 1), (1, 0)}
    p3 = path_graph(3)
    got = {s.seq for s in enumerate_orderings(p3, "bfs")}
    assert got == orderings_brute(p3, "bfs") == {(0, 1, 2), (2, 1, 0), (1, 0, 2), (1, 2, 0)}
    assert {s.seq for s in enumerate_orderings(complete_graph(3), "mns")} == set(
        permutations(range(3))
    )


def test_enumerate_limit_and_cap():
    assert len(list(enumerate_orderings(complete_graph(4), "gs", limit=5))) == 5
    with pytest.raises(CapExceededError):
        list(enumerate_orderings(path_graph(11), "gs"))


@given(connected_graphs(max_n=5), st.sampled_from(KINDS))
@settings(max_examples=60, deadline=None)
def test_enumeration_matches_permutation_filter(g, kind):
    assert {s.seq for s in enumerate_orderings(g, kind)} == orderings_brute(g, kind)


def test_enumeration_is_deterministic():
    g = fig1()
    assert list(enumerate_orderings(g, "mns")) == list(enumerate_orderings(g, "mns"))


def test_find_ordering_first_and_last():
    g = path_graph(3)
    assert find_ordering(g, "dfs", last=1) is None
    sigma = find_ordering(g, "bfs", first=0, last=2)
    assert sigma.seq == (0, 1, 2)
    assert find_ordering(cycle_graph(4), "bfs", first=0, last=2) is not None


@given(connected_graphs(max_n=6))
@settings(max_examples=40, deadline=None)
def test_search_laws_on_random_graphs(g):
    sets = {k: {s.seq for s in enumerate_orderings(g, k)} for k in KINDS}
    for kind in ("lbfs", "ldfs", "mcs"):
        assert sets[kind] <= sets["mns"]
    for kind in KINDS:
        assert sets[kind] <= sets["gs"]
    for kind in ("bfs", "lbfs"):
        for seq in sets[kind]:
            depth = layers_from(g, seq[0]).depth
            assert [depth[v] for v in seq] == sorted(depth[v] for v in seq)


def test_mns_orderings_of_fig1_are_peos():
    g = fig1()
    assert all(is_peo(g, s) for s in enumerate_orderings(g, "mns"))
