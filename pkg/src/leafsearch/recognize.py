"""Deciding whether a vertex can be a leaf of a search tree.

Each decider answers one (search, tree, leaf kind) question, using a
structural characterization where one applies and exhaustive backtracking
otherwise. Positive answers carry a witness ordering whenever one can be
built; negative answers carry a certificate describing the obstruction.
:func:`query` picks the decider.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from leafsearch.errors import (
    CapExceededError,
    GraphClassError,
    OrderingError,
    TrivialGraphError,
)
from leafsearch.graph import (
    Graph,
    OpCounter,
    VertexOrdering,
    as_ordering,
    bfs_distances,
    bipartition,
    components,
    cut_vertices,
    ecc_diam_rad,
    induced_subgraph,
    is_bipartite,
    is_chordal,
    is_simplicial,
    left_neighbors,
    require_connected,
    split_partition,
)
from leafsearch.search import (
    DEFAULT_CAP,
    MNS_LIKE,
    PlusRho,
    SearchKind,
    _eligible_fast,
    find_ordering,
    is_search_ordering,
    label_key,
    run_search,
)
from leafsearch.trees import (
    LeafRole,
    TreeKind,
    build_tree,
    classify_leaf,
    dfs_order_of_tree,
)


class LeafKind(str, Enum):
    ROOT = "root"
    BRANCH = "branch"
    ANY = "any"

    @classmethod
    def parse(cls, value: str | LeafKind) -> LeafKind:
        if isinstance(value, LeafKind):
            return value
        return cls(value.strip().lower())


@dataclass(frozen=True)
class LeafQuery:
    kind: SearchKind
    tree: TreeKind
    leaf: LeafKind
    v: int

    @classmethod
    def make(cls, kind, tree, leaf, v: int) -> LeafQuery:
        return cls(SearchKind.parse(kind), TreeKind.parse(tree), LeafKind.parse(leaf), v)


@dataclass(frozen=True)
class LeafVerdict:
    answer: bool
    method: str
    witness: VertexOrdering | None = None
    certificate: dict[str, Any] = field(default_factory=dict)

    def record(self, g: Graph, query: LeafQuery | None = None) -> dict[str, Any]:
        """JSON-ready dictionary with vertex names."""
        out: dict[str, Any] = {}
        if query is not None:
            out.update(
                vertex=g.names[query.v],
                search=query.kind.value,
                tree=query.tree.value,
                kind=query.leaf.value,
            )
        out["answer"] = self.answer
        out["method"] = self.method
        out["witness"] = self.witness.names(g) if self.witness is not None else None
        out["certificate"] = self.certificate
        return out


def _check(g: Graph, v: int) -> None:
    if g.n < 2:
        raise TrivialGraphError("no spanning-tree leaf exists in a graph with fewer than 2 vertices")
    require_connected(g, "leaf recognition")
    if not 0 <= v < g.n:
        raise OrderingError(f"vertex {v} not in graph")


def _role_matches(role: LeafRole, leaf: LeafKind) -> bool:
    if leaf is LeafKind.ROOT:
        return role is LeafRole.ROOT_LEAF
    if leaf is LeafKind.BRANCH:
        return role is LeafRole.BRANCH_LEAF
    return role is not LeafRole.INTERNAL


def replay_witness(g: Graph, query: LeafQuery, witness) -> bool:
    """Check that ``witness`` is a valid ordering giving ``query.v`` the queried role."""
    try:
        sigma = as_ordering(g, witness)
    except (OrderingError, KeyError):
        return False
    if not is_search_ordering(g, query.kind, sigma):
        return False
    role = classify_leaf(build_tree(g, sigma, query.tree), query.v)
    return _role_matches(role, query.leaf)


def _rho(g: Graph, front: list[int], back: list[int] = ()) -> PlusRho:
    """Reference ordering: ``front`` first, ``back`` last, everything else by id."""
    placed = set(front) | set(back)
    middle = [u for u in range(g.n) if u not in placed]
    return PlusRho(VertexOrdering(tuple(front) + tuple(middle) + tuple(back)))


def _names(g: Graph, vs) -> list[str]:
    return [g.names[u] for u in sorted(vs)]


def _verified(g: Graph, query: LeafQuery, sigma: VertexOrdering | None) -> VertexOrdering | None:
    return sigma if sigma is not None and replay_witness(g, query, sigma) else None


def _cut_certificate(g: Graph, v: int) -> dict[str, Any]:
    rest = [u for u in range(g.n) if u != v]
    return {"cut_vertex": g.names[v], "components": [_names(g, c) for c in components(g, rest)]}


def _lift(ids: tuple[int, ...], sigma: VertexOrdering) -> list[int]:
    return [ids[u] for u in sigma]


def _gs_after(g: Graph, v: int) -> list[int]:
    """A GS ordering of ``g - v`` starting at the smallest neighbour of ``v``."""
    sub, ids = g.remove_vertex(v)
    w = min(g.adj[v])
    sigma = run_search(sub, SearchKind.GS, _rho(sub, [ids.index(w)]))
    return _lift(ids, sigma)


# -- root leaves -------------------------------------------------------------


def f_root_leaf_gs(g: Graph, v: int, kind: SearchKind | str = SearchKind.GS) -> LeafVerdict:
    """F-root leaf: ``v`` must have degree one, since every neighbour of the
    first vertex becomes its child. Holds for every search started at ``v``."""
    _check(g, v)
    kind = SearchKind.parse(kind)
    if g.degree(v) != 1:
        return LeafVerdict(False, "degree-one", certificate={"degree": g.degree(v)})
    sigma = run_search(g, kind, _rho(g, [v]))
    return LeafVerdict(True, "degree-one", sigma)


_CUT_KINDS = (SearchKind.GS, SearchKind.DFS, SearchKind.LDFS, SearchKind.MCS, SearchKind.MNS)


def l_root_leaf(g: Graph, v: int, kind: SearchKind | str = SearchKind.GS) -> LeafVerdict:
    """L-root leaf for GS, DFS, LDFS, MCS and MNS: exactly the non-cut vertices."""
    _check(g, v)
    kind = SearchKind.parse(kind)
    if kind not in _CUT_KINDS:
        raise GraphClassError(f"cut-vertex characterization does not cover {kind}")
    if v in cut_vertices(g):
        return LeafVerdict(False, "cut-vertex", certificate=_cut_certificate(g, v))
    if kind is SearchKind.GS:
        sigma = VertexOrdering(tuple([v] + _gs_after(g, v)))
    elif kind in (SearchKind.DFS, SearchKind.LDFS):
        # every DFS ordering from a non-cut vertex leaves it with one L-child
        sigma = run_search(g, kind, _rho(g, [v]))
    else:
        # MCS with the neighbours of v pushed to the right; MCS orderings are MNS orderings
        non_nbrs = [u for u in range(g.n) if u != v and not g.has_edge(u, v)]
        rho = PlusRho(VertexOrdering(tuple([v] + non_nbrs + list(g.adj[v]))))
        sigma = run_search(g, SearchKind.MCS, rho)
    return LeafVerdict(True, "cut-vertex", sigma)


def l_leaf_any(g: Graph, v: int, kind: SearchKind | str = SearchKind.GS) -> LeafVerdict:
    """L-leaf (root or branch) for GS, DFS, LDFS, MCS, MNS: the non-cut vertices."""
    return l_root_leaf(g, v, kind)


def l_root_leaf_bfs(g: Graph, v: int) -> LeafVerdict:
    """BFS L-root leaf iff the neighbourhood of ``v`` induces a connected graph."""
    _check(g, v)
    nbrs = list(g.adj[v])
    comps = components(g, nbrs)
    if len(comps) > 1:
        return LeafVerdict(
            False,
            "bfs-neighborhood-connected",
            certificate={"neighborhood_components": [_names(g, c) for c in comps]},
        )
    sub, ids = induced_subgraph(g, nbrs)
    inner = _lift(ids, run_search(sub, SearchKind.GS))
    sigma = run_search(g, SearchKind.BFS, _rho(g, [v] + inner))
    return LeafVerdict(True, "bfs-neighborhood-connected", sigma)


# -- branch leaves -----------------------------------------------------------


def gs_branch_leaf(g: Graph, v: int, tree: TreeKind | str = TreeKind.L) -> LeafVerdict:
    """GS branch leaf (either tree): non-cut vertices, witnessed by a GS ordering ending at ``v``."""
    _check(g, v)
    tree = TreeKind.parse(tree)
    if v in cut_vertices(g):
        return LeafVerdict(False, "cut-vertex", certificate=_cut_certificate(g, v))
    sigma = VertexOrdering(tuple(_gs_after(g, v) + [v]))
    return LeafVerdict(True, "cut-vertex", sigma)


def dfs_l_branch_leaf(g: Graph, v: int, cap: int | None = DEFAULT_CAP) -> LeafVerdict:
    """DFS L-branch leaves are exactly DFS end-vertices; decided by backtracking."""
    _check(g, v)
    try:
        sigma = find_ordering(g, SearchKind.DFS, last=v, cap=cap)
    except CapExceededError as exc:
        raise CapExceededError(
            f"{exc}; DFS L-branch leaves are NP-hard in general, "
            "raise the cap or use a smaller instance"
        ) from None
    if sigma is None:
        return LeafVerdict(False, "dfs-end-vertex-exact", certificate={"dfs_end_vertex": False})
    return LeafVerdict(True, "dfs-end-vertex-exact", sigma)


def branch_leaf_to_end_vertex(g: Graph, sigma, v: int) -> VertexOrdering:
    """Re-order a DFS ordering so that its L-branch leaf ``v`` comes last.

    The L-tree is traversed again, always entering subtrees that avoid ``v``
    before the child leading towards ``v``.
    """
    sigma = as_ordering(g, sigma)
    if not is_search_ordering(g, SearchKind.DFS, sigma):
        raise OrderingError("not a DFS ordering")
    t = build_tree(g, sigma, TreeKind.L)
    if classify_leaf(t, v) is not LeafRole.BRANCH_LEAF:
        raise OrderingError(f"{g.names[v]} is not an L-branch leaf of the ordering")
    towards_v = set(t.path_to_root(v))
    pos = sigma.inverse
    tau = dfs_order_of_tree(t, t.root, lambda c: (c in towards_v, pos[c]))
    return tau


def bfs_l_branch_leaf_bipartite(
    g: Graph, v: int, counter: OpCounter | None = None
) -> LeafVerdict:
    """BFS L-branch leaf on bipartite graphs: some ``r != v`` whose distances
    to all other vertices survive the deletion of ``v``.

    Runs two BFS per candidate root, ``O(n * m)`` overall; ``counter``
    accumulates the BFS step count.
    """
    _check(g, v)
    if not is_bipartite(g):
        raise GraphClassError("characterization requires bipartite")
    for r in range(g.n):
        if r == v:
            continue
        full = bfs_distances(g, r, counter=counter)
        cut = bfs_distances(g, r, removed=v, counter=counter)
        if all(full[w] == cut[w] for w in range(g.n) if w != v):
            path = _shortest_path(g, r, v)
            sigma = run_search(g, SearchKind.BFS, _rho(g, path))
            return LeafVerdict(
                True,
                "bipartite-distance",
                sigma,
                {"root": g.names[r]},
            )
    return LeafVerdict(
        False, "bipartite-distance", certificate={"distance_preserving_root": None}
    )


def _shortest_path(g: Graph, s: int, t: int) -> list[int]:
    dist = bfs_distances(g, t)
    path = [s]
    while path[-1] != t:
        u = path[-1]
        path.append(min(w for w in g.adj[u] if dist[w] == dist[u] - 1))
    return path


def _require_chordal(g: Graph) -> None:
    if not is_chordal(g):
        raise GraphClassError("characterization requires chordal")


def peo_l_branch_leaf_chordal(
    g: Graph, v: int, kind: SearchKind | str = SearchKind.MNS, cap: int | None = DEFAULT_CAP
) -> LeafVerdict:
    """L-branch leaf of LBFS/LDFS/MCS/MNS on chordal graphs iff ``v`` is simplicial."""
    _check(g, v)
    _require_chordal(g)
    kind = SearchKind.parse(kind)
    if kind not in MNS_LIKE:
        raise GraphClassError(f"simplicial characterization does not cover {kind}")
    if not is_simplicial(g, v):
        bad = next(
            (a, b) for a in g.adj[v] for b in g.adj[v] if a < b and not g.has_edge(a, b)
        )
        return LeafVerdict(
            False, "chordal-simplicial", certificate={"nonadjacent_neighbors": _names(g, bad)}
        )
    query = LeafQuery(kind, TreeKind.L, LeafKind.BRANCH, v)
    return LeafVerdict(True, "chordal-simplicial", _witness_search(g, query, cap))


def _witness_search(g: Graph, query: LeafQuery, cap: int | None) -> VertexOrdering | None:
    """Try a few +-search orderings with ``v`` pushed to the right, then backtracking."""
    v = query.v
    others = [u for u in range(g.n) if u != v]
    nbrs = set(g.adj[v])
    fronts = [others, others[::-1], [u for u in others if u not in nbrs] + sorted(nbrs)]
    for front in fronts:
        sigma = _verified(g, query, run_search(g, query.kind, _rho(g, front, [v])))
        if sigma is not None:
            return sigma
    if cap is not None and g.n > cap:
        return None
    return exact_leaf(g, v, query.kind, query.tree, query.leaf, cap=cap).witness


def dominating_clique(g: Graph) -> list[int] | None:
    """A dominating clique of a chordal graph, or None.

    Any dominating clique extends to a dominating maximal clique, and every
    maximal clique of a chordal graph is a vertex plus its earlier
    neighbours in a PEO, so only those candidates are tried.
    """
    if g.n == 0:
        return None
    full = (1 << g.n) - 1
    masks = g.masks
    for comp in components(g):
        if len(comp) != g.n:
            return None
    sigma = run_search(g, SearchKind.LBFS)
    for x in sigma:
        clique = [x] + left_neighbors(g, sigma, x)
        covered = 0
        for c in clique:
            covered |= masks[c] | 1 << c
        if covered == full:
            return sorted(clique)
    return None


def lbfs_diameter_at_most_three(g: Graph) -> tuple[bool, int, int]:
    """Decide ``diam(g) <= 3`` for a connected chordal ``g`` from one LBFS end-vertex.

    An LBFS end-vertex of a chordal graph has eccentricity ``diam`` or
    ``diam - 1``, so ``ecc <= 3`` already settles the question (when
    ``ecc == 3`` the gap cannot occur, and below 3 it is at most one).
    Returns ``(answer, end_vertex, ecc)``.
    """
    u = run_search(g, SearchKind.LBFS).last
    ecc = int(max(bfs_distances(g, u)))
    return ecc <= 3, u, ecc


def peo_f_branch_leaf_chordal(
    g: Graph, v: int, kind: SearchKind | str = SearchKind.MNS
) -> LeafVerdict:
    """F-branch leaf of LBFS/LDFS/MCS/MNS on chordal graphs iff the
    neighbourhood of ``v`` has a dominating clique (equivalently, is connected
    with diameter at most three)."""
    _check(g, v)
    _require_chordal(g)
    kind = SearchKind.parse(kind)
    if kind not in MNS_LIKE:
        raise GraphClassError(f"dominating-clique characterization does not cover {kind}")
    method = "chordal-dominating-clique"
    sub, ids = induced_subgraph(g, g.adj[v])
    comps = components(sub)
    if len(comps) > 1:
        return LeafVerdict(
            False,
            method,
            certificate={"neighborhood_components": [[sub.names[u] for u in c] for c in comps]},
        )
    ok, end, ecc = lbfs_diameter_at_most_three(sub)
    cert = {"lbfs_end_vertex": sub.names[end], "eccentricity": ecc}
    if not ok:
        return LeafVerdict(False, method, certificate=cert)
    clique = dominating_clique(sub)
    witness = None
    if clique is not None:
        front = [ids[c] for c in clique]
        cert["dominating_clique"] = [g.names[c] for c in front]
        sigma = run_search(g, kind, _rho(g, front, [v]))
        witness = _verified(g, LeafQuery(kind, TreeKind.F, LeafKind.BRANCH, v), sigma)
    return LeafVerdict(True, method, witness, cert)


def bfs_f_branch_leaf_chordal(g: Graph, v: int) -> LeafVerdict:
    """BFS F-branch leaf on chordal graphs iff the neighbourhood of ``v`` has radius <= 2."""
    _check(g, v)
    _require_chordal(g)
    method = "chordal-bfs-radius"
    sub, ids = induced_subgraph(g, g.adj[v])
    comps = components(sub)
    if len(comps) > 1:
        return LeafVerdict(
            False,
            method,
            certificate={
                "radius": None,
                "neighborhood_components": [[sub.names[u] for u in c] for c in comps],
            },
        )
    metrics = ecc_diam_rad(sub)
    w = ids[metrics.center]
    cert = {"radius": metrics.radius, "center": g.names[w]}
    if metrics.radius > 2:
        return LeafVerdict(False, method, certificate=cert)
    # start in a central vertex w and number all of N(w) - v before v
    front = [w] + [u for u in g.adj[w] if u != v] + [v]
    sigma = run_search(g, SearchKind.BFS, _rho(g, front))
    return LeafVerdict(True, method, sigma, cert)


def dfs_f_branch_leaf_split(g: Graph, v: int) -> LeafVerdict:
    """DFS F-branch leaf on split graphs iff ``v`` is not a cut vertex."""
    _check(g, v)
    parts = split_partition(g)
    if parts is None:
        raise GraphClassError("characterization requires a split graph")
    method = "split-cut-vertex"
    if v in cut_vertices(g):
        return LeafVerdict(False, method, certificate=_cut_certificate(g, v))
    clique, _ = parts
    front = [c for c in clique if c != v]
    sigma = run_search(g, SearchKind.DFS, _rho(g, front, [v]))
    return LeafVerdict(True, method, sigma, {"clique": _names(g, clique)})


# -- exact solver -------------------------------------------------------------


def exact_leaf(
    g: Graph,
    v: int,
    kind: SearchKind | str,
    tree: TreeKind | str,
    leaf: LeafKind | str = LeafKind.BRANCH,
    cap: int | None = DEFAULT_CAP,
) -> LeafVerdict:
    """Backtracking over eligible prefixes, sound and complete within the cap.

    A vertex's parent in either tree is fixed the moment it is numbered, so
    a prefix in which ``v`` has already gained a forbidden child can be
    dropped together with all of its extensions.
    """
    _check(g, v)
    kind = SearchKind.parse(kind)
    tree = TreeKind.parse(tree)
    leaf = LeafKind.parse(leaf)
    if cap is not None and g.n > cap:
        raise CapExceededError(f"graph has {g.n} vertices, exact solver cap is {cap}")
    if leaf is LeafKind.ANY:
        root = exact_leaf(g, v, kind, tree, LeafKind.ROOT, cap)
        return root if root.answer else exact_leaf(g, v, kind, tree, LeafKind.BRANCH, cap)

    n = g.n
    adj = g.adj
    key = label_key(kind, n)
    labels = [0] * n
    pool = list(range(n))
    seq: list[int] = []
    lowest = tree is TreeKind.F
    # v may keep at most one child as root leaf, none as branch leaf
    allowed = 1 if leaf is LeafKind.ROOT else 0
    kids = 0
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal kids, nodes
        nodes += 1
        if i > n:
            return True
        if i == 1:
            cands = [v] if leaf is LeafKind.ROOT else [u for u in pool if u != v]
        else:
            cands = _eligible_fast(kind, key, labels, pool)
        bit = 1 << i
        for x in cands:
            gained = 0
            if i > 1:
                lab = labels[x]
                p = (lab & -lab).bit_length() if lowest else lab.bit_length()
                if seq[p - 2] == v:
                    if kids >= allowed:
                        continue
                    gained = 1
            kids += gained
            pool.remove(x)
            seq.append(x)
            for w in adj[x]:
                labels[w] |= bit
            if rec(i + 1):
                return True
            for w in adj[x]:
                labels[w] &= ~bit
            seq.pop()
            pool.insert(next((j for j, y in enumerate(pool) if y > x), len(pool)), x)
            kids -= gained
        return False

    found = rec(1)
    method = "exact"
    if found:
        return LeafVerdict(True, method, VertexOrdering(tuple(seq)), {"nodes": nodes})
    return LeafVerdict(False, method, certificate={"nodes": nodes, "exhausted": True})


def exact_branch_leaf(
    g: Graph, v: int, kind: SearchKind | str, tree: TreeKind | str, cap: int | None = DEFAULT_CAP
) -> LeafVerdict:
    return exact_leaf(g, v, kind, tree, LeafKind.BRANCH, cap)


# -- dispatcher -----------------------------------------------------------------


def _root_verdict(g: Graph, q: LeafQuery, cap: int | None) -> LeafVerdict:
    if q.tree is TreeKind.F:
        return f_root_leaf_gs(g, q.v, q.kind)
    if q.kind in _CUT_KINDS:
        return l_root_leaf(g, q.v, q.kind)
    if q.kind is SearchKind.BFS:
        return l_root_leaf_bfs(g, q.v)
    return exact_leaf(g, q.v, q.kind, q.tree, LeafKind.ROOT, cap)


def _branch_verdict(g: Graph, q: LeafQuery, cap: int | None) -> LeafVerdict:
    kind, v = q.kind, q.v
    if kind is SearchKind.GS:
        return gs_branch_leaf(g, v, q.tree)
    if q.tree is TreeKind.F:
        if kind is SearchKind.BFS and is_chordal(g):
            return bfs_f_branch_leaf_chordal(g, v)
        if kind is SearchKind.DFS and split_partition(g) is not None:
            return dfs_f_branch_leaf_split(g, v)
        if kind in MNS_LIKE and is_chordal(g):
            return peo_f_branch_leaf_chordal(g, v, kind)
    else:
        if kind is SearchKind.DFS:
            return dfs_l_branch_leaf(g, v, cap)
        if kind is SearchKind.BFS and bipartition(g) is not None:
            return bfs_l_branch_leaf_bipartite(g, v)
        if kind in MNS_LIKE and is_chordal(g):
            return peo_l_branch_leaf_chordal(g, v, kind, cap)
    return exact_leaf(g, v, kind, q.tree, LeafKind.BRANCH, cap)


def query(g: Graph, q: LeafQuery, cap: int | None = DEFAULT_CAP) -> LeafVerdict:
    """Answer ``q`` with the most specific applicable method.

    ``verdict.method`` names the route taken; ``any`` questions report the
    root route when it succeeds and both routes otherwise.
    """
    _check(g, q.v)
    if q.leaf is LeafKind.ROOT:
        return _root_verdict(g, q, cap)
    if q.leaf is LeafKind.BRANCH:
        return _branch_verdict(g, q, cap)
    if q.tree is TreeKind.L and q.kind in _CUT_KINDS:
        return l_leaf_any(g, q.v, q.kind)
    root = _root_verdict(g, q, cap)
    if root.answer:
        return root
    branch = _branch_verdict(g, q, cap)
    if branch.answer:
        return branch
    return LeafVerdict(
        False,
        f"{root.method}+{branch.method}",
        certificate={"root": root.certificate, "branch": branch.certificate},
    )
