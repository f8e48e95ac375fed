"""Independent brute-force references used by the tests.

Nothing here imports the search engine: label orders are written directly
on Python sets and orderings are found by filtering permutations.
"""

from __future__ import annotations

from itertools import combinations, permutations

from hypothesis import strategies as st

from leafsearch.graph import Graph


def set_less(kind: str, a: frozenset, b: frozenset) -> bool:
    if kind == "gs":
        return not a and bool(b)
    if kind == "bfs":
        return (not a and bool(b)) or (bool(a) and bool(b) and min(a) > min(b))
    if kind == "dfs":
        return (not a and bool(b)) or (bool(a) and bool(b) and max(a) < max(b))
    if kind == "mcs":
        return len(a) < len(b)
    if kind == "mns":
        return a < b
    ab, ba = a - b, b - a
    if kind == "lbfs":
        return a < b or (bool(ab) and bool(ba) and min(ab) > min(ba))
    if kind == "ldfs":
        return a < b or (bool(ab) and bool(ba) and max(ab) < max(ba))
    raise ValueError(kind)


def is_ordering_brute(g: Graph, kind: str, seq) -> bool:
    labels = {v: frozenset() for v in range(g.n)}
    left = set(range(g.n))
    for i, v in enumerate(seq, 1):
        if any(set_less(kind, labels[v], labels[y]) for y in left if y != v):
            return False
        left.discard(v)
        for w in g.adj[v]:
            if w in left:
                labels[w] = labels[w] | {i}
    return True


def orderings_brute(g: Graph, kind: str) -> set[tuple[int, ...]]:
    return {p for p in permutations(range(g.n)) if is_ordering_brute(g, kind, p)}


def connected_brute(g: Graph, keep) -> bool:
    keep = set(keep)
    if not keep:
        return True
    start = next(iter(keep))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in keep and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == keep


def cut_vertices_brute(g: Graph) -> set[int]:
    return {v for v in range(g.n) if not connected_brute(g, set(range(g.n)) - {v})}


def has_long_induced_cycle(g: Graph) -> bool:
    """Some vertex subset of size >= 4 induces a cycle."""
    for size in range(4, g.n + 1):
        for sub in combinations(range(g.n), size):
            s = set(sub)
            if all(sum(1 for w in g.adj[u] if w in s) == 2 for u in sub) and connected_brute(g, s):
                return True
    return False


def tree_parents_brute(g: Graph, seq, kind: str) -> dict[int, int]:
    pos = {v: i for i, v in enumerate(seq)}
    out = {}
    for v in seq[1:]:
        earlier = [w for w in g.adj[v] if pos[w] < pos[v]]
        pick = min if kind == "f" else max
        out[v] = pick(earlier, key=pos.get)
    return out


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 7):
    """Random connected graph: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for i in range(1, n):
        edges.add((draw(st.integers(0, i - 1)), i))
    pairs = list(combinations(range(n), 2))
    extra = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {p for p, keep in zip(pairs, extra) if keep}
    return Graph.from_edges(n, sorted(edges))


@st.composite
def any_graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])
