import pytest
from helpers import connected_graphs, tree_parents_brute
from hypothesis import given, settings
from hypothesis import strategies as st

from leafsearch.errors import OrderingError
from leafsearch.families import complete_graph, fig1, path_graph
from leafsearch.graph import as_ordering
from leafsearch.search import ALL_KINDS, Arbitrary, enumerate_orderings, run_search
from leafsearch.trees import (
    LeafRole,
    RootedSpanningTree,
    TreeKind,
    build_tree,
    classify_leaf,
    dfs_order_of_tree,
    is_dfs_l_tree,
    leaves,
)


def named_parents(g, t):
    return {g.names[c]: g.names[p] for c, p in t.edges()}


def test_fig1_f_tree():
    g = fig1()
    t = build_tree(g, "w,v,x,z,u,y", "F")
    assert g.names[t.root] == "w"
    assert named_parents(g, t) == {"v": "w", "x": "w", "z": "w", "u": "v", "y": "x"}
    assert {g.names[v] for v in leaves(t) if v != t.root} == {"z", "u", "y"}
    assert classify_leaf(t, g.vertex("z")) is LeafRole.BRANCH_LEAF
    assert classify_leaf(t, g.vertex("w")) is LeafRole.INTERNAL


def test_fig1_l_tree():
    g = fig1()
    t = build_tree(g, "w,v,x,z,u,y", "L")
    assert named_parents(g, t) == {"v": "w", "x": "w", "z": "x", "u": "z", "y": "z"}


def test_k3_trees():
    g = complete_graph(3)
    assert build_tree(g, (0, 1, 2), "L").parent == (None, 0, 1)
    assert build_tree(g, (0, 1, 2), "F").parent == (None, 0, 0)


def test_root_leaf_classification():
    g = path_graph(3)
    t = build_tree(g, (0, 1, 2), TreeKind.L)
    assert classify_leaf(t, 0) is LeafRole.ROOT_LEAF
    assert classify_leaf(t, 2) is LeafRole.BRANCH_LEAF
    assert classify_leaf(build_tree(g, (1, 0, 2), "L"), 1) is LeafRole.INTERNAL


def test_build_tree_rejects_non_gs_ordering():
    with pytest.raises(OrderingError):
        build_tree(path_graph(3), (0, 2, 1), "F")


@given(connected_graphs(max_n=7), st.sampled_from(list(ALL_KINDS)), st.integers(0, 999))
@settings(max_examples=120)
def test_trees_match_brute_force_and_span(g, kind, seed):
    sigma = run_search(g, kind, Arbitrary(seed))
    for tk in ("F", "L"):
        t = build_tree(g, sigma, tk)
        assert len(t.edges()) == g.n - 1
        assert all(g.has_edge(c, p) for c, p in t.edges())
        assert all(t.is_ancestor(t.root, v) for v in range(g.n))
        assert dict(t.edges()) == tree_parents_brute(g, sigma.seq, tk.lower())


@given(connected_graphs(max_n=7), st.integers(0, 999))
@settings(max_examples=80)
def test_dfs_l_trees_are_normal(g, seed):
    sigma = run_search(g, "dfs", Arbitrary(seed))
    t = build_tree(g, sigma, "L")
    assert is_dfs_l_tree(g, t)
    # preorder with children in visiting order gives the search back
    assert dfs_order_of_tree(t, t.root, sigma) == sigma


def test_is_dfs_l_tree_examples():
    g = fig1()
    assert not is_dfs_l_tree(g, build_tree(g, "w,v,x,z,u,y", "F"))
    assert is_dfs_l_tree(g, build_tree(g, run_search(g, "dfs"), "L"))
    bad = RootedSpanningTree(0, (None, 0, 0))
    assert not is_dfs_l_tree(complete_graph(3), bad)


def test_every_normal_tree_preorder_is_a_dfs():
    from leafsearch.search import is_search_ordering

    for g in (fig1(), path_graph(4), complete_graph(4)):
        for sigma in enumerate_orderings(g, "gs"):
            t = build_tree(g, sigma, "L")
            if is_dfs_l_tree(g, t):
                assert is_search_ordering(g, "dfs", dfs_order_of_tree(t, t.root))


def test_dfs_order_of_tree_requires_root():
    t = build_tree(path_graph(3), (0, 1, 2), "L")
    with pytest.raises(OrderingError):
        dfs_order_of_tree(t, 1)


def test_end_vertex_is_branch_leaf_in_both_trees():
    for g in (fig1(), path_graph(5), complete_graph(4)):
        for kind in ALL_KINDS:
            for sigma in enumerate_orderings(g, kind):
                last = sigma.seq[-1]
                for tk in ("F", "L"):
                    assert classify_leaf(build_tree(g, sigma, tk), last) is LeafRole.BRANCH_LEAF


def test_tree_format():
    g = path_graph(2)
    assert build_tree(g, (0, 1), "F").format(g) == "root a\nb a\n"
    assert as_ordering(g, "b,a").seq == (1, 0)
