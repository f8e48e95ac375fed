"""Ground truth by exhaustion.

:func:`leaf_sets` walks every search ordering of a small graph and records
which vertices ever take which leaf role; :func:`graph_corpus` streams small
connected graphs; :func:`certify` checks a characterization against both on
a whole corpus and reports the first disagreement.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any

from leafsearch.errors import CapExceededError, LeafSearchError
from leafsearch.graph import (
    INF,
    Graph,
    VertexOrdering,
    bfs_distances,
    components,
    cut_vertices,
    ecc_diam_rad,
    induced_subgraph,
    is_bipartite,
    is_chordal,
    is_clique,
    is_peo,
    is_simplicial,
    is_split,
    layers_from,
)
from leafsearch.search import (
    ALL_KINDS,
    DEFAULT_CAP,
    MNS_LIKE,
    SearchKind,
    _eligible_fast,
    enumerate_orderings,
    label_key,
)
from leafsearch.trees import LeafRole, TreeKind, build_tree, classify_leaf


class Role(str, Enum):
    ROOT = "root"
    BRANCH = "branch"
    # start vertex that is *not* a root leaf; used for "every ordering from v" questions
    ROOT_INTERNAL = "root-internal"
    END = "end"


RoleKey = tuple["TreeKind | None", Role]

TREE_ROLES: tuple[RoleKey, ...] = tuple(
    (t, r) for t in (TreeKind.F, TreeKind.L) for r in (Role.ROOT, Role.BRANCH)
)
DEFAULT_ROLES: tuple[RoleKey, ...] = TREE_ROLES + ((None, Role.END),)


def role_name(key: RoleKey) -> str:
    tree, role = key
    return role.value if tree is None else f"{tree.value}-{role.value}"


@dataclass
class LeafSets:
    """Which vertices take which role over all ``kind``-orderings of one graph.

    ``witnesses`` keeps, for each (role, vertex) that occurs, the first
    ordering found with it. ``count`` is the number of complete orderings
    visited; with pruning this is a lower bound on the ordering count.
    """

    kind: SearchKind
    sets: dict[RoleKey, frozenset[int]]
    witnesses: dict[tuple[RoleKey, int], VertexOrdering] = field(default_factory=dict)
    count: int = 0
    pruned: bool = True

    def get(self, tree: TreeKind | str | None, role: Role | str) -> frozenset[int]:
        tree = None if tree is None else TreeKind.parse(tree)
        if role == "any":
            return self.sets[(tree, Role.ROOT)] | self.sets[(tree, Role.BRANCH)]
        return self.sets[(tree, Role(role))]

    @property
    def end_vertices(self) -> frozenset[int]:
        return self.sets[(None, Role.END)]

    def record(self, g: Graph) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "orderings": self.count}
        for key, vs in self.sets.items():
            out[role_name(key)] = sorted(g.names[v] for v in vs)
        return out


def leaf_sets(
    g: Graph,
    kind: SearchKind | str,
    roles: Iterable[RoleKey] | None = None,
    *,
    vertices: Iterable[int] | None = None,
    exhaustive: bool = False,
    cap: int | None = DEFAULT_CAP,
) -> LeafSets:
    """Exact role sets of ``kind`` on ``g`` for the requested ``roles``.

    The default walk backtracks over eligible prefixes, tracking both trees
    incrementally, and abandons a subtree once no still-unwitnessed
    (role, vertex) pair can occur in any of its completions. With
    ``exhaustive=True`` every ordering is enumerated and both trees are
    rebuilt from scratch instead, which is slow but shares no logic with
    the fast walk beyond ordering enumeration.
    """
    kind = SearchKind.parse(kind)
    if cap is not None and g.n > cap:
        raise CapExceededError(f"graph has {g.n} vertices, oracle cap is {cap}")
    roles = tuple(DEFAULT_ROLES if roles is None else roles)
    verts = tuple(range(g.n) if vertices is None else vertices)
    if exhaustive:
        return _leaf_sets_exhaustive(g, kind, roles, verts, cap)
    return _leaf_sets_fast(g, kind, roles, verts)


def _leaf_sets_exhaustive(g, kind, roles, verts, cap) -> LeafSets:
    found: dict[RoleKey, set[int]] = {key: set() for key in roles}
    witnesses: dict[tuple[RoleKey, int], VertexOrdering] = {}
    count = 0
    for sigma in enumerate_orderings(g, kind, cap=cap):
        count += 1
        trees = {t: build_tree(g, sigma, t) for t in (TreeKind.F, TreeKind.L)}
        for key in roles:
            tree, role = key
            for v in verts:
                if role is Role.END:
                    hit = sigma.last == v
                elif role is Role.ROOT_INTERNAL:
                    t = trees[tree]
                    hit = t.root == v and classify_leaf(t, v) is LeafRole.INTERNAL
                else:
                    want = LeafRole.ROOT_LEAF if role is Role.ROOT else LeafRole.BRANCH_LEAF
                    hit = classify_leaf(trees[tree], v) is want
                if hit:
                    found[key].add(v)
                    witnesses.setdefault((key, v), sigma)
    sets = {key: frozenset(vs) for key, vs in found.items()}
    return LeafSets(kind, sets, witnesses, count, pruned=False)


def _leaf_sets_fast(g: Graph, kind: SearchKind, roles, verts) -> LeafSets:
    n = g.n
    adj = g.adj
    key_fn = label_key(kind, n)
    roles = list(dict.fromkeys(roles))
    slot_of = {TreeKind.F: 0, TreeKind.L: 1, None: -1}
    # per requested role: bitmask of vertices not yet seen in that role
    open_mask = [0] * len(roles)
    for v in verts:
        for j in range(len(roles)):
            open_mask[j] |= 1 << v
    found: dict[RoleKey, set[int]] = {key: set() for key in roles}
    witnesses: dict[tuple[RoleKey, int], VertexOrdering] = {}
    plan = [(j, slot_of[tree], role) for j, (tree, role) in enumerate(roles)]

    labels = [0] * n
    pool = list(range(n))
    seq: list[int] = []
    kids = ([0] * n, [0] * n)
    full = (1 << n) - 1
    # vertices without children, per tree; unnumbered vertices
    childless = [full, full]
    state = {"unnumbered": full}
    count = 0

    def possible() -> bool:
        root = seq[0]
        rbit = 1 << root
        for j, slot, role in plan:
            m = open_mask[j]
            if not m:
                continue
            if role is Role.BRANCH:
                if m & childless[slot] & ~rbit:
                    return True
            elif role is Role.END:
                if m & state["unnumbered"]:
                    return True
            elif m & rbit:
                if role is Role.ROOT_INTERNAL or kids[slot][root] <= 1:
                    return True
        return False

    def harvest() -> None:
        root = seq[0]
        last = seq[-1]
        snapshot = None
        for j, slot, role in plan:
            m = open_mask[j]
            if not m:
                continue
            if role is Role.BRANCH:
                hits = m & childless[slot] & ~(1 << root)
            elif role is Role.END:
                hits = m & 1 << last
            elif role is Role.ROOT:
                hits = m & 1 << root if kids[slot][root] == 1 else 0
            else:
                hits = m & 1 << root if kids[slot][root] != 1 else 0
            if hits:
                open_mask[j] = m & ~hits
                if snapshot is None:
                    snapshot = VertexOrdering(tuple(seq))
                while hits:
                    low = hits & -hits
                    v = low.bit_length() - 1
                    found[roles[j]].add(v)
                    witnesses[(roles[j], v)] = snapshot
                    hits ^= low

    def adopt(slot: int, p: int, delta: int) -> None:
        k = kids[slot][p] + delta
        kids[slot][p] = k
        if k == 0:
            childless[slot] |= 1 << p
        else:
            childless[slot] &= ~(1 << p)

    def rec(i: int) -> None:
        nonlocal count
        if i > n:
            count += 1
            harvest()
            return
        if i > 1 and not possible():
            return
        cands = _eligible_fast(kind, key_fn, labels, pool)
        bit = 1 << i
        for x in cands:
            if not any(open_mask):
                return
            pf = pl = -1
            if i > 1:
                lab = labels[x]
                pf = seq[(lab & -lab).bit_length() - 2]
                pl = seq[lab.bit_length() - 2]
                adopt(0, pf, 1)
                adopt(1, pl, 1)
            pool.remove(x)
            seq.append(x)
            state["unnumbered"] &= ~(1 << x)
            for w in adj[x]:
                labels[w] |= bit
            rec(i + 1)
            for w in adj[x]:
                labels[w] &= ~bit
            state["unnumbered"] |= 1 << x
            seq.pop()
            pool.insert(_insert_pos(pool, x), x)
            if i > 1:
                adopt(0, pf, -1)
                adopt(1, pl, -1)

    if n:
        rec(1)
    sets = {key: frozenset(vs) for key, vs in found.items()}
    return LeafSets(kind, sets, witnesses, count)


def _insert_pos(pool: list[int], x: int) -> int:
    for j, y in enumerate(pool):
        if y > x:
            return j
    return len(pool)


@dataclass
class OracleReport:
    graph_id: str
    graph: Graph
    slices: dict[SearchKind, LeafSets]

    def record(self) -> dict[str, Any]:
        return {
            "graph": self.graph_id,
            "n": self.graph.n,
            "m": self.graph.m,
            "kinds": [s.record(self.graph) for s in self.slices.values()],
        }


def oracle_report(
    g: Graph, graph_id: str = "", kinds: Iterable[SearchKind | str] = ALL_KINDS, **kw
) -> OracleReport:
    slices = {}
    for k in kinds:
        k = SearchKind.parse(k)
        slices[k] = leaf_sets(g, k, **kw)
    return OracleReport(graph_id, g, slices)


# -- corpora ---------------------------------------------------------------------

GRAPH_CLASSES: dict[str, Callable[[Graph], bool]] = {
    "chordal": is_chordal,
    "bipartite": is_bipartite,
    "split": is_split,
}

EXHAUSTIVE_NMAX = 7


def _connected_masks(n: int, pairs: list[tuple[int, int]], edges: int) -> bool:
    nbr = [0] * n
    for j, (a, b) in enumerate(pairs):
        if edges >> j & 1:
            nbr[a] |= 1 << b
            nbr[b] |= 1 << a
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def graph_corpus(
    n_max: int,
    mode: str = "exhaustive",
    *,
    n_min: int = 2,
    graph_class: str | None = None,
    seed: int = 0,
    count: int = 100,
    p: float = 0.5,
) -> Iterator[tuple[str, Graph]]:
    """Stream ``(graph_id, graph)`` pairs of connected graphs.

    ``exhaustive`` lists every connected labeled graph with ``n_min <= n <=
    n_max`` (ids ``n<n>-e<edge mask>``); ``random`` draws ``count`` seeded
    G(n, p) graphs with uniform ``n`` in range, redrawing disconnected ones.
    ``graph_class`` filters by ``chordal``, ``bipartite`` or ``split``.
    """
    keep = _class_filter(graph_class)
    if mode == "exhaustive":
        if n_max > EXHAUSTIVE_NMAX:
            raise CapExceededError(f"exhaustive corpus limited to n <= {EXHAUSTIVE_NMAX}")
        for n in range(max(n_min, 1), n_max + 1):
            pairs = list(combinations(range(n), 2))
            names = [str(i) for i in range(n)]
            for mask in range(1 << len(pairs)):
                if n > 1 and not _connected_masks(n, pairs, mask):
                    continue
                edges = [pairs[j] for j in range(len(pairs)) if mask >> j & 1]
                g = Graph.from_edges(n, edges, names)
                if keep(g):
                    yield f"n{n}-e{mask}", g
    elif mode == "random":
        rng = random.Random(seed)
        made = 0
        while made < count:
            n = rng.randint(max(n_min, 1), n_max)
            pairs = list(combinations(range(n), 2))
            edges = [e for e in pairs if rng.random() < p]
            g = Graph.from_edges(n, edges, [str(i) for i in range(n)])
            if len(components(g)) != 1 or not keep(g):
                continue
            yield f"r{seed}-{made}", g
            made += 1
    else:
        raise ValueError(f"unknown corpus mode {mode!r}")


def _class_filter(graph_class: str | None) -> Callable[[Graph], bool]:
    if graph_class is None:
        return lambda g: True
    try:
        return GRAPH_CLASSES[graph_class]
    except KeyError:
        raise ValueError(f"unknown graph class {graph_class!r}") from None


# -- brute-force predicates ------------------------------------------------------


def _nbhd(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.adj[v])[0]


def nbhd_connected(g: Graph, v: int) -> bool:
    return len(components(_nbhd(g, v))) == 1


def nbhd_diameter(g: Graph, v: int) -> float:
    sub = _nbhd(g, v)
    if len(components(sub)) != 1:
        return INF
    return ecc_diam_rad(sub).diameter


def nbhd_radius(g: Graph, v: int) -> float:
    sub = _nbhd(g, v)
    if len(components(sub)) != 1:
        return INF
    return ecc_diam_rad(sub).radius


def has_dominating_clique(g: Graph) -> bool:
    """Subset search; fine for the handful of vertices in a neighbourhood."""
    full = (1 << g.n) - 1
    for size in range(1, g.n + 1):
        for c in combinations(range(g.n), size):
            if not is_clique(g, c):
                continue
            cover = 0
            for u in c:
                cover |= g.masks[u] | 1 << u
            if cover == full:
                return True
    return False


def distance_preserving_root(g: Graph, v: int) -> bool:
    """Some ``r != v`` keeps all its distances when ``v`` is deleted."""
    sub, ids = g.remove_vertex(v)
    for r_new, r in enumerate(ids):
        full = layers_from(g, r).depth
        cut = layers_from(sub, r_new).depth
        if all(full[ids[w]] == cut[w] for w in range(sub.n)):
            return True
    return False


def chordal_layer_violations(g: Graph) -> list[str]:
    """Check the three BFS-layer facts that hold on every chordal graph."""
    out = []
    n = g.n
    for r in range(n):
        depth = layers_from(g, r).depth
        for x, y in combinations(range(n), 2):
            if depth[x] != depth[y]:
                continue
            i = depth[x]
            common_below = [z for z in g.adj[x] if g.has_edge(z, y) and depth[z] == i + 1]
            if common_below and not g.has_edge(x, y):
                out.append(f"layer-clique r={r} x={x} y={y} z={common_below[0]}")
            if g.has_edge(x, y):
                up_x = {z for z in g.adj[x] if depth[z] == i - 1}
                up_y = {z for z in g.adj[y] if depth[z] == i - 1}
                if not (up_x <= up_y or up_y <= up_x):
                    out.append(f"nested-parents r={r} x={x} y={y}")
    for v in range(n):
        nb = g.adj[v]
        sub, ids = induced_subgraph(g, nb)
        rest, rest_ids = g.remove_vertex(v)
        where = {old: new for new, old in enumerate(rest_ids)}
        for a in range(sub.n):
            d_sub = bfs_distances(sub, a)
            d_rest = bfs_distances(rest, where[ids[a]])
            for b in range(sub.n):
                if d_sub[b] != d_rest[where[ids[b]]]:
                    out.append(f"neighborhood-distance v={v} x={ids[a]} y={ids[b]}")
    return out


# -- certification ---------------------------------------------------------------


@dataclass
class CertifyReport:
    theorem: str
    description: str
    passed: bool
    graphs: int = 0
    skipped: int = 0
    checks: int = 0
    counterexample: dict[str, Any] | None = None

    def record(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "description": self.description,
            "passed": self.passed,
            "graphs": self.graphs,
            "skipped": self.skipped,
            "checks": self.checks,
            "counterexample": self.counterexample,
        }


class Counterexample(Exception):
    def __init__(self, detail: dict[str, Any]):
        super().__init__(detail)
        self.detail = detail


def _expect(g: Graph, what: str, got: Iterable[int], want: Iterable[int]) -> int:
    got, want = frozenset(got), frozenset(want)
    if got != want:
        raise Counterexample(
            {
                "check": what,
                "oracle": sorted(g.names[v] for v in got),
                "predicate": sorted(g.names[v] for v in want),
            }
        )
    return 1


def _decider_set(g: Graph, fn: Callable[[int], Any]) -> set[int]:
    """Vertices answered yes by a recognizer; every witness is replayed."""
    from leafsearch.recognize import replay_witness

    out = set()
    for v in range(g.n):
        verdict, query = fn(v)
        if verdict.answer:
            out.add(v)
            if verdict.witness is not None and not replay_witness(g, query, verdict.witness):
                raise Counterexample(
                    {"check": f"witness replay {verdict.method}", "vertex": g.names[v]}
                )
    return out


def _q(kind, tree, leaf, v):
    from leafsearch.recognize import LeafQuery

    return LeafQuery.make(kind, tree, leaf, v)


def _check_obs(g: Graph) -> int:
    from leafsearch.recognize import f_root_leaf_gs

    deg1 = {v for v in range(g.n) if g.degree(v) == 1}
    checks = 0
    for kind in ALL_KINDS:
        s = leaf_sets(g, kind, [(TreeKind.F, Role.ROOT)])
        checks += _expect(g, f"{kind} F-root", s.get("f", "root"), deg1)
        dec = _decider_set(g, lambda v: (f_root_leaf_gs(g, v, kind), _q(kind, "f", "root", v)))
        checks += _expect(g, f"{kind} F-root decider", dec, deg1)
    return checks


def _check_t2(g: Graph) -> int:
    from leafsearch.recognize import gs_branch_leaf, l_root_leaf

    noncut = set(range(g.n)) - cut_vertices(g)
    gs = leaf_sets(g, SearchKind.GS, [(TreeKind.L, Role.ROOT), (TreeKind.L, Role.BRANCH),
                                      (TreeKind.F, Role.BRANCH), (None, Role.END)])
    dfs = leaf_sets(g, SearchKind.DFS, [(TreeKind.L, Role.ROOT), (TreeKind.L, Role.ROOT_INTERNAL)])
    mcs = leaf_sets(g, SearchKind.MCS, [(TreeKind.L, Role.ROOT)])
    checks = 0
    checks += _expect(g, "DFS L-root (some ordering from v)", dfs.get("l", "root"), noncut)
    every = set(range(g.n)) - dfs.get("l", Role.ROOT_INTERNAL)
    checks += _expect(g, "DFS L-root (every ordering from v)", every, noncut)
    checks += _expect(g, "MCS L-root", mcs.get("l", "root"), noncut)
    checks += _expect(g, "GS L-root", gs.get("l", "root"), noncut)
    checks += _expect(g, "GS L-branch", gs.get("l", "branch"), noncut)
    checks += _expect(g, "GS F-branch", gs.get("f", "branch"), noncut)
    checks += _expect(g, "GS end-vertex", gs.end_vertices, noncut)
    for kind in (SearchKind.GS, SearchKind.DFS, SearchKind.MCS):
        dec = _decider_set(g, lambda v: (l_root_leaf(g, v, kind), _q(kind, "l", "root", v)))
        checks += _expect(g, f"{kind} L-root decider", dec, noncut)
    for tree in ("f", "l"):
        dec = _decider_set(g, lambda v: (gs_branch_leaf(g, v, tree), _q("gs", tree, "branch", v)))
        checks += _expect(g, f"GS {tree}-branch decider", dec, noncut)
    return checks


def _check_t3(g: Graph) -> int:
    from leafsearch.recognize import l_leaf_any

    noncut = set(range(g.n)) - cut_vertices(g)
    checks = 0
    for kind in (SearchKind.GS, SearchKind.DFS, SearchKind.LDFS, SearchKind.MCS, SearchKind.MNS):
        s = leaf_sets(g, kind, [(TreeKind.L, Role.ROOT), (TreeKind.L, Role.BRANCH)])
        checks += _expect(g, f"{kind} L-leaf", s.get("l", "any"), noncut)
        checks += _expect(g, f"{kind} L-root", s.get("l", "root"), noncut)
        dec = _decider_set(g, lambda v: (l_leaf_any(g, v, kind), _q(kind, "l", "any", v)))
        checks += _expect(g, f"{kind} L-leaf decider", dec, noncut)
    return checks


def _check_t4(g: Graph) -> int:
    from leafsearch.recognize import l_root_leaf_bfs

    want = {v for v in range(g.n) if nbhd_connected(g, v)}
    s = leaf_sets(g, SearchKind.BFS, [(TreeKind.L, Role.ROOT)])
    checks = _expect(g, "BFS L-root", s.get("l", "root"), want)
    dec = _decider_set(g, lambda v: (l_root_leaf_bfs(g, v), _q("bfs", "l", "root", v)))
    return checks + _expect(g, "BFS L-root decider", dec, want)


def _check_t5(g: Graph) -> int:
    from leafsearch.recognize import branch_leaf_to_end_vertex, dfs_l_branch_leaf
    from leafsearch.search import is_search_ordering

    s = leaf_sets(g, SearchKind.DFS, [(TreeKind.L, Role.BRANCH), (None, Role.END)])
    checks = _expect(g, "DFS L-branch vs end-vertex", s.get("l", "branch"), s.end_vertices)
    for v in s.get("l", "branch"):
        sigma = s.witnesses[((TreeKind.L, Role.BRANCH), v)]
        tau = branch_leaf_to_end_vertex(g, sigma, v)
        if tau.last != v or not is_search_ordering(g, SearchKind.DFS, tau):
            raise Counterexample(
                {"check": "branch leaf to end vertex", "vertex": g.names[v],
                 "ordering": sigma.names(g), "converted": tau.names(g)}
            )
        checks += 1
    dec = _decider_set(g, lambda v: (dfs_l_branch_leaf(g, v), _q("dfs", "l", "branch", v)))
    return checks + _expect(g, "DFS L-branch decider", dec, s.end_vertices)


def _check_t9(g: Graph) -> int:
    from leafsearch.recognize import bfs_l_branch_leaf_bipartite

    want = {v for v in range(g.n) if distance_preserving_root(g, v)}
    s = leaf_sets(g, SearchKind.BFS, [(TreeKind.L, Role.BRANCH)])
    checks = _expect(g, "BFS L-branch (bipartite)", s.get("l", "branch"), want)
    dec = _decider_set(
        g, lambda v: (bfs_l_branch_leaf_bipartite(g, v), _q("bfs", "l", "branch", v))
    )
    return checks + _expect(g, "BFS L-branch decider", dec, want)


def _check_t12(g: Graph) -> int:
    from leafsearch.recognize import peo_l_branch_leaf_chordal

    want = {v for v in range(g.n) if is_simplicial(g, v)}
    checks = 0
    for kind in MNS_LIKE:
        s = leaf_sets(g, kind, [(TreeKind.L, Role.BRANCH)])
        checks += _expect(g, f"{kind} L-branch (chordal)", s.get("l", "branch"), want)
        dec = _decider_set(
            g, lambda v: (peo_l_branch_leaf_chordal(g, v, kind), _q(kind, "l", "branch", v))
        )
        checks += _expect(g, f"{kind} L-branch decider", dec, want)
    return checks


def _check_t14(g: Graph) -> int:
    from leafsearch.recognize import (
        lbfs_diameter_at_most_three,
        peo_f_branch_leaf_chordal,
    )

    want = {v for v in range(g.n) if nbhd_diameter(g, v) <= 3}
    domc = {v for v in range(g.n) if has_dominating_clique(_nbhd(g, v))}
    checks = _expect(g, "dominating clique vs diameter <= 3", domc, want)
    for v in range(g.n):
        sub = _nbhd(g, v)
        if len(components(sub)) == 1:
            fast = lbfs_diameter_at_most_three(sub)[0]
            if fast != (ecc_diam_rad(sub).diameter <= 3):
                raise Counterexample({"check": "LBFS eccentricity shortcut", "vertex": g.names[v]})
            checks += 1
    for kind in MNS_LIKE:
        s = leaf_sets(g, kind, [(TreeKind.F, Role.BRANCH)])
        checks += _expect(g, f"{kind} F-branch (chordal)", s.get("f", "branch"), want)
        dec = _decider_set(
            g, lambda v: (peo_f_branch_leaf_chordal(g, v, kind), _q(kind, "f", "branch", v))
        )
        checks += _expect(g, f"{kind} F-branch decider", dec, want)
    return checks


def _check_t21(g: Graph) -> int:
    from leafsearch.recognize import bfs_f_branch_leaf_chordal

    bad = chordal_layer_violations(g)
    if bad:
        raise Counterexample({"check": "chordal BFS layer properties", "violations": bad[:5]})
    want = {v for v in range(g.n) if nbhd_radius(g, v) <= 2}
    s = leaf_sets(g, SearchKind.BFS, [(TreeKind.F, Role.BRANCH)])
    checks = 1 + _expect(g, "BFS F-branch (chordal)", s.get("f", "branch"), want)
    dec = _decider_set(g, lambda v: (bfs_f_branch_leaf_chordal(g, v), _q("bfs", "f", "branch", v)))
    return checks + _expect(g, "BFS F-branch decider", dec, want)


def _check_t23(g: Graph) -> int:
    from leafsearch.recognize import dfs_f_branch_leaf_split

    want = set(range(g.n)) - cut_vertices(g)
    s = leaf_sets(g, SearchKind.DFS, [(TreeKind.F, Role.BRANCH)])
    checks = _expect(g, "DFS F-branch (split)", s.get("f", "branch"), want)
    dec = _decider_set(g, lambda v: (dfs_f_branch_leaf_split(g, v), _q("dfs", "f", "branch", v)))
    return checks + _expect(g, "DFS F-branch decider", dec, want)


def _check_dispatch(g: Graph) -> int:
    from leafsearch.recognize import query

    checks = 0
    for kind in ALL_KINDS:
        s = leaf_sets(g, kind, TREE_ROLES)
        for tree in ("f", "l"):
            for leaf in ("root", "branch", "any"):
                dec = _decider_set(g, lambda v: (query(g, _q(kind, tree, leaf, v)), _q(kind, tree, leaf, v)))
                checks += _expect(g, f"dispatcher {kind} {tree}-{leaf}", dec, s.get(tree, leaf))
    return checks


def _check_chordal_peo(g: Graph) -> int:
    """Every MNS ordering of a chordal graph is a perfect elimination ordering."""
    checks = 0
    for sigma in enumerate_orderings(g, SearchKind.MNS):
        if not is_peo(g, sigma):
            raise Counterexample({"check": "MNS ordering is a PEO", "ordering": sigma.names(g)})
        checks += 1
    return checks


def _walk(g: Graph, kind: SearchKind, visit: Callable[[list[int], list[int], list[int]], None]) -> None:
    """Call ``visit(prefix, labels, pool)`` at every node of the ``kind`` prefix tree."""
    n = g.n
    key_fn = label_key(kind, n)
    labels = [0] * n
    pool = list(range(n))
    seq: list[int] = []

    def rec(i: int) -> None:
        visit(seq, labels, pool)
        if i > n:
            return
        bit = 1 << i
        for x in _eligible_fast(kind, key_fn, labels, pool):
            pool.remove(x)
            seq.append(x)
            for w in g.adj[x]:
                labels[w] |= bit
            rec(i + 1)
            for w in g.adj[x]:
                labels[w] &= ~bit
            seq.pop()
            pool.insert(_insert_pos(pool, x), x)

    rec(1)


def search_law_violations(g: Graph) -> list[str]:
    """Containment, layering and PEO laws of the searches on one graph.

    LBFS/LDFS/MCS orderings are MNS orderings and MNS orderings are GS
    orderings: checked node by node on the larger prefix tree, which by
    induction covers every ordering of the smaller search. BFS and LBFS
    orderings visit the distance layers of their start vertex in order. On
    chordal graphs every MNS ordering is a PEO.
    """
    out: list[str] = []
    n = g.n
    keys = {k: label_key(k, n) for k in ALL_KINDS}
    chordal = is_chordal(g)

    def mns_node(seq, labels, pool):
        if not pool:
            if chordal and not is_peo(g, VertexOrdering(tuple(seq))):
                out.append(f"MNS ordering {seq} is not a PEO")
            return
        mns = set(_eligible_fast(SearchKind.MNS, None, labels, pool))
        gs = set(_eligible_fast(SearchKind.GS, keys[SearchKind.GS], labels, pool))
        if seq and not mns <= gs:
            out.append(f"MNS choice outside GS after {seq}")
        for kind in (SearchKind.LBFS, SearchKind.LDFS, SearchKind.MCS):
            if not set(_eligible_fast(kind, keys[kind], labels, pool)) <= mns:
                out.append(f"{kind} choice outside MNS after {seq}")

    _walk(g, SearchKind.MNS, mns_node)

    depths = [bfs_distances(g, r) for r in range(n)]

    def layered(seq, labels, pool):
        if len(seq) >= 2:
            d = depths[seq[0]]
            if d[seq[-1]] < d[seq[-2]]:
                out.append(f"layers out of order in {seq}")

    for kind in (SearchKind.BFS, SearchKind.LBFS):
        _walk(g, kind, layered)
    return out


def _check_laws(g: Graph) -> int:
    bad = search_law_violations(g)
    if bad:
        raise Counterexample({"check": "search laws", "violations": bad[:5]})
    return 1


@dataclass(frozen=True)
class Theorem:
    description: str
    check: Callable[[Graph], int]
    graph_class: str | None = None


THEOREMS: dict[str, Theorem] = {
    "OBS": Theorem("F-root leaf iff degree one, every search", _check_obs),
    "T2": Theorem("L-root leaves of GS/DFS/MCS and GS branch leaves are the non-cut vertices", _check_t2),
    "T3": Theorem("L-leaves of GS/DFS/LDFS/MCS/MNS are the non-cut vertices", _check_t3),
    "T4": Theorem("BFS L-root leaf iff the neighbourhood is connected", _check_t4),
    "T5": Theorem("DFS L-branch leaves are the DFS end-vertices", _check_t5),
    "T9": Theorem("bipartite BFS L-branch leaf iff some root keeps its distances", _check_t9, "bipartite"),
    "T12": Theorem("chordal LBFS/LDFS/MCS/MNS L-branch leaf iff simplicial", _check_t12, "chordal"),
    "T14": Theorem(
        "chordal LBFS/LDFS/MCS/MNS F-branch leaf iff the neighbourhood has a dominating clique",
        _check_t14,
        "chordal",
    ),
    "T21": Theorem("chordal BFS F-branch leaf iff the neighbourhood has radius <= 2", _check_t21, "chordal"),
    "T23": Theorem("split DFS F-branch leaf iff not a cut vertex", _check_t23, "split"),
    "PEO": Theorem("MNS orderings of chordal graphs are PEOs", _check_chordal_peo, "chordal"),
    "LAWS": Theorem("search containment, BFS/LBFS layering, MNS PEOs on chordal graphs", _check_laws),
    "DISPATCH": Theorem("dispatcher agrees with the oracle on every leaf question", _check_dispatch),
}


def certify(
    theorem_id: str, corpus: Iterable[tuple[str, Graph]], *, stop_at_first: bool = True
) -> CertifyReport:
    """Run one characterization over ``corpus``; graphs outside its class are skipped."""
    key = theorem_id.upper()
    if key not in THEOREMS:
        raise LeafSearchError(f"unknown theorem id {theorem_id!r}; known: {', '.join(THEOREMS)}")
    thm = THEOREMS[key]
    keep = _class_filter(thm.graph_class)
    report = CertifyReport(key, thm.description, True)
    for gid, g in corpus:
        if g.n < 2 or not keep(g):
            report.skipped += 1
            continue
        report.graphs += 1
        try:
            report.checks += thm.check(g)
        except Counterexample as exc:
            report.passed = False
            if report.counterexample is None:
                report.counterexample = {"graph": gid, "edges": [
                    [g.names[a], g.names[b]] for a, b in g.edges()], **exc.detail}
            if stop_at_first:
                break
    return report
