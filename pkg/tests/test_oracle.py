import json

import pytest
from helpers import connected_graphs, orderings_brute, tree_parents_brute
from hypothesis import given, settings
from hypothesis import strategies as st

from leafsearch.errors import CapExceededError, LeafSearchError
from leafsearch.families import complete_graph, fig1, path_graph
from leafsearch.oracle import (
    DEFAULT_ROLES,
    THEOREMS,
    Role,
    certify,
    graph_corpus,
    leaf_sets,
    oracle_report,
    search_law_violations,
)
from leafsearch.search import ALL_KINDS
from leafsearch.trees import TreeKind

KINDS = [k.value for k in ALL_KINDS]


def brute_sets(g, kind):
    """Role sets straight from the permutation filter and hand-built parents."""
    out = {key: set() for key in DEFAULT_ROLES}
    for seq in orderings_brute(g, kind):
        out[(None, Role.END)].add(seq[-1])
        for tk in TreeKind:
            parent = tree_parents_brute(g, seq, tk.value)
            kids = {v: 0 for v in range(g.n)}
            for p in parent.values():
                kids[p] += 1
            if kids[seq[0]] == 1:
                out[(tk, Role.ROOT)].add(seq[0])
            out[(tk, Role.BRANCH)] |= {v for v in seq[1:] if kids[v] == 0}
    return {k: frozenset(v) for k, v in out.items()}


def test_leaf_sets_examples():
    p3 = path_graph(3)
    assert leaf_sets(p3, "gs").get("L", "any") == {0, 2}
    for kind in KINDS:
        s = leaf_sets(complete_graph(2), kind)
        for key in DEFAULT_ROLES:
            if key[1] is not Role.BRANCH or key[0] is not None:
                assert s.sets[key] == {0, 1}
    g = fig1()
    assert g.vertex("z") in leaf_sets(g, "bfs").get("F", "branch")


def test_leaf_sets_witnesses_have_their_roles():
    from leafsearch.recognize import LeafQuery, replay_witness

    g = fig1()
    for kind in KINDS:
        s = leaf_sets(g, kind)
        for ((tree, role), v), sigma in s.witnesses.items():
            if tree is None:
                assert sigma.last == v
            elif role in (Role.ROOT, Role.BRANCH):
                assert replay_witness(g, LeafQuery.make(kind, tree, role.value, v), sigma)


@given(connected_graphs(max_n=6), st.sampled_from(KINDS))
@settings(max_examples=80, deadline=None)
def test_leaf_sets_match_brute_force(g, kind):
    fast = leaf_sets(g, kind)
    slow = leaf_sets(g, kind, exhaustive=True)
    brute = brute_sets(g, kind)
    for key in DEFAULT_ROLES:
        assert fast.sets[key] == slow.sets[key] == brute[key]


@given(connected_graphs(max_n=6), st.sampled_from(KINDS))
@settings(max_examples=60, deadline=None)
def test_end_vertices_are_branch_leaves(g, kind):
    s = leaf_sets(g, kind)
    assert s.end_vertices <= s.get("F", "branch")
    assert s.end_vertices <= s.get("L", "branch")


@given(connected_graphs(max_n=6))
@settings(max_examples=40, deadline=None)
def test_leaf_sets_monotone_under_containment(g):
    mns = leaf_sets(g, "mns")
    gs = leaf_sets(g, "gs")
    for kind in ("lbfs", "ldfs", "mcs"):
        sub = leaf_sets(g, kind)
        for key in DEFAULT_ROLES:
            assert sub.sets[key] <= mns.sets[key] <= gs.sets[key]


def test_leaf_sets_cap():
    with pytest.raises(CapExceededError):
        leaf_sets(path_graph(11), "gs")


def test_corpus_counts():
    assert sum(1 for _ in graph_corpus(2)) == 1
    assert sum(1 for _ in graph_corpus(3, n_min=3)) == 4
    assert sum(1 for _ in graph_corpus(4, n_min=4)) == 38
    assert sum(1 for _ in graph_corpus(5, n_min=5)) == 728


def test_corpus_classes():
    from leafsearch.graph import is_bipartite, is_chordal

    chordal = list(graph_corpus(4, graph_class="chordal"))
    assert chordal and all(is_chordal(g) for _, g in chordal)
    assert all(is_bipartite(g) for _, g in graph_corpus(4, graph_class="bipartite"))
    with pytest.raises(ValueError):
        list(graph_corpus(3, graph_class="planar"))
    with pytest.raises(CapExceededError):
        next(graph_corpus(8))


def test_random_corpus_is_deterministic():
    a = [(gid, g.adj) for gid, g in graph_corpus(6, mode="random", seed=7, count=20)]
    b = [(gid, g.adj) for gid, g in graph_corpus(6, mode="random", seed=7, count=20)]
    assert a == b and len(a) == 20
    c = [(gid, g.adj) for gid, g in graph_corpus(6, mode="random", seed=8, count=20)]
    assert a != c


def test_certify_t5_small():
    report = certify("T5", graph_corpus(5))
    assert report.passed and report.graphs == 771


def test_certify_t12_chordal():
    report = certify("t12", graph_corpus(5, graph_class="chordal"))
    assert report.passed and report.skipped == 0


def test_certify_t21_fig1():
    report = certify("T21", [("fig1", fig1())])
    assert report.passed and report.graphs == 1
    g = fig1()
    z = g.vertex("z")
    from leafsearch.oracle import nbhd_radius

    assert z in leaf_sets(g, "bfs").get("F", "branch") and nbhd_radius(g, z) <= 2


def test_certify_skips_out_of_class():
    report = certify("T9", [("k3", complete_graph(3)), ("p3", path_graph(3))])
    assert report.passed and (report.graphs, report.skipped) == (1, 1)


def test_certify_reports_counterexample():
    from leafsearch.oracle import Counterexample, Theorem

    def always_wrong(g):
        raise Counterexample({"check": "forced"})

    THEOREMS["BROKEN"] = Theorem("always fails", always_wrong)
    try:
        report = certify("BROKEN", graph_corpus(3))
    finally:
        del THEOREMS["BROKEN"]
    assert not report.passed
    assert report.counterexample["graph"] == "n2-e1"
    assert report.counterexample["edges"] == [["0", "1"]]


def test_certify_unknown_theorem():
    with pytest.raises(LeafSearchError, match="unknown theorem"):
        certify("T99", [])


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_every_theorem_passes_up_to_four(theorem):
    assert certify(theorem, graph_corpus(4)).passed


def test_reports_are_deterministic():
    g = fig1()
    a = json.dumps(oracle_report(g, "fig1").record(), sort_keys=True)
    b = json.dumps(oracle_report(g, "fig1").record(), sort_keys=True)
    assert a == b
    r1 = certify("T4", graph_corpus(5, mode="random", seed=1, count=30)).record()
    r2 = certify("T4", graph_corpus(5, mode="random", seed=1, count=30)).record()
    assert r1 == r2


def test_search_laws_hold_on_fig1():
    assert search_law_violations(fig1()) == []
