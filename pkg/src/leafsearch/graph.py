"""Graph representation, metric primitives and graph-class recognizers.

Vertices are the dense integers ``0..n-1``; names are kept only for I/O.
Every function here is pure and leaves its arguments untouched.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

from leafsearch.errors import (
    DisconnectedGraphError,
    GraphFormatError,
    OrderingError,
    UnknownVertexError,
)

INF = math.inf


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Build instances with :meth:`from_edges` (or :func:`load_graph`); the
    constructor expects an already normalised, symmetric adjacency.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(self.n)))
        if len(self.adj) != self.n or len(self.names) != self.n:
            raise ValueError("adjacency and name table must have n entries")
        if len(set(self.names)) != self.n:
            raise ValueError("vertex names must be unique")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        names: Sequence[str] | None = None,
    ) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(names or ()))

    @classmethod
    def from_named_edges(cls, edges: Iterable[tuple[str, str]]) -> Graph:
        ids: dict[str, int] = {}
        pairs = []
        for a, b in edges:
            for x in (a, b):
                if x not in ids:
                    ids[x] = len(ids)
            pairs.append((ids[a], ids[b]))
        return cls.from_edges(len(ids), pairs, list(ids))

    # -- basic queries -------------------------------------------------

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as bitmasks (bit ``u`` set in ``masks[v]`` iff uv is an edge)."""
        out = []
        for nb in self.adj:
            m = 0
            for u in nb:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield u, v

    def name(self, v: int) -> str:
        return self.names[v]

    def vertex(self, key: str | int) -> int:
        """Resolve a vertex name (or an in-range id) to its id."""
        if isinstance(key, int):
            if 0 <= key < self.n:
                return key
            raise UnknownVertexError(key)
        if key in self._index:
            return self._index[key]
        raise UnknownVertexError(key)

    def remove_vertex(self, v: int) -> tuple[Graph, tuple[int, ...]]:
        return induced_subgraph(self, [u for u in range(self.n) if u != v])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexOrdering:
    """A bijection between positions ``0..n-1`` and vertices.

    Positions are zero-based here; the one-based convention of label
    search lives inside the search engine only.
    """

    seq: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        seq = tuple(self.seq)
        object.__setattr__(self, "seq", seq)
        n = len(seq)
        inv = [-1] * n
        for i, v in enumerate(seq):
            if not (isinstance(v, int) and 0 <= v < n) or inv[v] != -1:
                raise OrderingError(f"not a permutation of 0..{n - 1}: {seq}")
            inv[v] = i
        object.__setattr__(self, "inverse", tuple(inv))

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self) -> Iterator[int]:
        return iter(self.seq)

    def __getitem__(self, i: int) -> int:
        return self.seq[i]

    def position(self, v: int) -> int:
        return self.inverse[v]

    def precedes(self, u: int, v: int) -> bool:
        return self.inverse[u] < self.inverse[v]

    @property
    def first(self) -> int:
        return self.seq[0]

    @property
    def last(self) -> int:
        return self.seq[-1]

    def names(self, g: Graph) -> list[str]:
        return [g.names[v] for v in self.seq]

    def format(self, g: Graph) -> str:
        return ",".join(self.names(g))

    @classmethod
    def identity(cls, n: int) -> VertexOrdering:
        return cls(tuple(range(n)))


def as_ordering(g: Graph, seq: VertexOrdering | Sequence[int | str] | str) -> VertexOrdering:
    """Coerce names, ids or a comma-separated string into a :class:`VertexOrdering`."""
    if isinstance(seq, VertexOrdering):
        if len(seq) != g.n:
            raise OrderingError(f"ordering has {len(seq)} entries, graph has {g.n}")
        return seq
    if isinstance(seq, str):
        seq = [s.strip() for s in seq.split(",") if s.strip()]
    ids = tuple(g.vertex(x) for x in seq)
    if len(ids) != g.n:
        raise OrderingError(f"ordering has {len(ids)} entries, graph has {g.n}")
    return VertexOrdering(ids)


# -- I/O -------------------------------------------------------------------


def load_graph(text: str) -> Graph:
    """Parse an edge list (``u v`` per line) or a DIMACS ``p edge`` document.

    The format is chosen from the first non-comment line. Edge-list ids are
    assigned in order of first appearance; duplicate edges are collapsed.
    """
    lines = text.splitlines()
    for raw in lines:
        s = raw.strip()
        if not s or s.startswith(("#", "c ")) or s == "c":
            continue
        if s.split()[:2] in (["p", "edge"], ["p", "col"]):
            return _load_dimacs(lines)
        break
    return _load_edge_list(lines)


def read_graph(path: str | Path) -> Graph:
    return load_graph(Path(path).read_text(encoding="utf-8"))


def _load_edge_list(lines: list[str]) -> Graph:
    ids: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) > 2:
            raise GraphFormatError(f"expected 'u v', got {s!r}", lineno)
        for p in parts:
            if p not in ids:
                ids[p] = len(ids)
        if len(parts) == 2:
            a, b = ids[parts[0]], ids[parts[1]]
            if a == b:
                raise GraphFormatError(f"self-loop at {parts[0]!r}", lineno)
            edges.add((min(a, b), max(a, b)))
    if not ids:
        raise GraphFormatError("empty graph document")
    return Graph.from_edges(len(ids), sorted(edges), list(ids))


def _load_dimacs(lines: list[str]) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError("expected 'p edge <n> <m>'", lineno)
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before problem line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            a, b = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= a < n and 0 <= b < n):
                raise GraphFormatError(f"vertex out of range 1..{n}", lineno)
            if a == b:
                raise GraphFormatError(f"self-loop at {a + 1}", lineno)
            edges.add((min(a, b), max(a, b)))
        else:
            raise GraphFormatError(f"unexpected line {raw.strip()!r}", lineno)
    if not n:
        raise GraphFormatError("empty graph document")
    return Graph.from_edges(n, sorted(edges), [str(i + 1) for i in range(n)])


def dump_edge_list(g: Graph) -> str:
    out = [f"# n={g.n} m={g.m}"]
    out += [f"{g.names[u]} {g.names[v]}" for u, v in g.edges()]
    # isolated vertices would vanish from a pure edge list
    out += [g.names[v] for v in range(g.n) if not g.adj[v]]
    return "\n".join(out) + "\n"


# -- distances -------------------------------------------------------------


@dataclass(frozen=True)
class LayerAssignment:
    """Distances from ``source``; unreachable vertices sit at depth ``INF``."""

    source: int
    depth: tuple[float, ...]

    def layer(self, i: int) -> list[int]:
        return [v for v, d in enumerate(self.depth) if d == i]

    def layers(self) -> list[list[int]]:
        ecc = self.eccentricity
        if ecc == INF:
            ecc = max(d for d in self.depth if d != INF)
        return [self.layer(i) for i in range(int(ecc) + 1)]

    @property
    def eccentricity(self) -> float:
        return max(self.depth)


class OpCounter:
    """Counts elementary BFS steps (vertex pops and adjacency scans)."""

    def __init__(self) -> None:
        self.ops = 0


def bfs_distances(
    g: Graph, source: int, removed: int | None = None, counter: OpCounter | None = None
) -> list[float]:
    """Single-source BFS distances, optionally in ``g - removed``."""
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    ops = 0
    while queue:
        u = queue.popleft()
        ops += 1
        du = dist[u] + 1
        for w in g.adj[u]:
            ops += 1
            if w != removed and dist[w] == INF:
                dist[w] = du
                queue.append(w)
    if counter is not None:
        counter.ops += ops
    return dist


def layers_from(g: Graph, r: int) -> LayerAssignment:
    return LayerAssignment(r, tuple(bfs_distances(g, r)))


def components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of ``g`` (or of ``g[within]``), each sorted."""
    allowed = set(range(g.n) if within is None else within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def require_connected(g: Graph, what: str = "operation") -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"{what} requires a connected graph")


class Metrics(NamedTuple):
    ecc: tuple[int, ...]
    diameter: int
    radius: int
    center: int


def ecc_diam_rad(g: Graph) -> Metrics:
    """Eccentricities, diameter, radius and the first central vertex."""
    if not is_connected(g):
        raise DisconnectedGraphError("metrics undefined on a disconnected graph")
    ecc = tuple(int(max(bfs_distances(g, s))) for s in range(g.n))
    rad = min(ecc)
    return Metrics(ecc, max(ecc), rad, ecc.index(rad))


def cut_vertices(g: Graph) -> frozenset[int]:
    """Articulation vertices, by iterative Hopcroft-Tarjan low-points."""
    require_connected(g, "cut vertex detection")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    timer = 0
    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(g.adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, iter(g.adj[w])))
                advanced = True
                break
            if w != parent:
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[u])
        if parent == root:
            root_children += 1
        elif low[u] >= disc[parent]:
            cuts.add(parent)
    if root_children > 1:
        cuts.add(root)
    return frozenset(cuts)


# -- cliques, PEOs, classes ------------------------------------------------


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    masks = g.masks
    full = 0
    for v in vs:
        full |= 1 << v
    return all((masks[v] | 1 << v) & full == full for v in vs)


def is_simplicial(g: Graph, v: int) -> bool:
    return is_clique(g, g.adj[v])


def left_neighbors(g: Graph, sigma: VertexOrdering, z: int) -> list[int]:
    pz = sigma.position(z)
    return [x for x in g.adj[z] if sigma.position(x) < pz]


def is_peo(g: Graph, sigma: VertexOrdering | Sequence[int]) -> bool:
    """True iff every vertex's earlier neighbours form a clique."""
    sigma = as_ordering(g, sigma)
    return all(is_clique(g, left_neighbors(g, sigma, z)) for z in range(g.n))


def is_chordal(g: Graph) -> bool:
    from leafsearch.search import SearchKind, run_search

    if g.n == 0:
        return True
    # label search on each component: an LBFS ordering is a PEO iff g is chordal
    for comp in components(g):
        sub, _ = induced_subgraph(g, comp)
        if not is_peo(sub, run_search(sub, SearchKind.LBFS)):
            return False
    return True


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Two colour classes, or None when ``g`` has an odd cycle."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return [v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def split_partition(g: Graph) -> tuple[list[int], list[int]] | None:
    """A (clique, independent set) partition with a maximum clique, or None.

    Hammer-Simeone degree-sequence test: with degrees sorted decreasingly and
    ``k`` the largest index with ``d_k >= k - 1``, ``g`` is split iff the top
    ``k`` degrees sum to ``k(k-1)`` plus the remaining degrees.
    """
    if g.n == 0:
        return [], []
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    k = max(i + 1 for i in range(g.n) if degs[i] >= i)
    if sum(degs[:k]) != k * (k - 1) + sum(degs[k:]):
        return None
    return sorted(order[:k]), sorted(order[k:])


def is_split(g: Graph) -> bool:
    return split_partition(g) is not None


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``g[S]`` plus the table mapping new ids back to ids of ``g``."""
    keep = sorted(set(vertices))
    new_id = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(new_id[w] for w in g.adj[v] if w in new_id) for v in keep)
    return Graph(len(keep), adj, tuple(g.names[v] for v in keep)), tuple(keep)

