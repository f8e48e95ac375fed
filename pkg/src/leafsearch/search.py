"""Generic label search and the seven partial label orders.

Labels hold the (one-based) positions of already numbered neighbours. At
every step the next vertex is drawn from the unnumbered vertices whose label
is maximal under the search's strict partial order.

Internally a label is an ``int`` bitmask with bit ``i`` standing for
position ``i``; set differences, minima and maxima are then single integer
operations.
"""

from __future__ import annotations

import random
from bisect import insort
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum

from leafsearch.errors import CapExceededError, OrderingError
from leafsearch.graph import Graph, VertexOrdering, as_ordering, require_connected

DEFAULT_CAP = 10


class SearchKind(str, Enum):
    GS = "gs"
    BFS = "bfs"
    LBFS = "lbfs"
    DFS = "dfs"
    LDFS = "ldfs"
    MCS = "mcs"
    MNS = "mns"

    @classmethod
    def parse(cls, value: str | SearchKind) -> SearchKind:
        if isinstance(value, SearchKind):
            return value
        return cls(value.strip().lower())

    def __str__(self) -> str:
        return self.name


ALL_KINDS = tuple(SearchKind)
MNS_LIKE = (SearchKind.LBFS, SearchKind.LDFS, SearchKind.MCS, SearchKind.MNS)


def _mask(label: Iterable[int]) -> int:
    m = 0
    for i in label:
        if i < 1:
            raise ValueError(f"label entries are positive integers, got {i}")
        m |= 1 << i
    return m


def _less_mask(kind: SearchKind, a: int, b: int) -> bool:
    """``A <_kind B`` on bitmask labels."""
    if kind is SearchKind.GS:
        return a == 0 and b != 0
    if kind is SearchKind.BFS:
        if a == 0:
            return b != 0
        return b != 0 and (a & -a) > (b & -b)
    if kind is SearchKind.DFS:
        if a == 0:
            return b != 0
        return b != 0 and a.bit_length() < b.bit_length()
    if kind is SearchKind.MCS:
        return a.bit_count() < b.bit_count()
    if kind is SearchKind.MNS:
        return a & ~b == 0 and a != b
    a_only, b_only = a & ~b, b & ~a
    if not a_only:
        return b_only != 0  # proper subset
    if not b_only:
        return False
    if kind is SearchKind.LBFS:
        return (a_only & -a_only) > (b_only & -b_only)
    if kind is SearchKind.LDFS:
        return a_only.bit_length() < b_only.bit_length()
    raise ValueError(kind)


def label_less(kind: SearchKind | str, a: Iterable[int], b: Iterable[int]) -> bool:
    """Strict partial label order of ``kind`` on sets of positive integers."""
    return _less_mask(SearchKind.parse(kind), _mask(a), _mask(b))


def _reverse_bits(x: int, width: int) -> int:
    return int(format(x, f"0{width}b")[::-1], 2)


def label_key(kind: SearchKind, n: int) -> Callable[[int], int] | None:
    """Sort key turning ``kind``'s order into integer comparison.

    Every order except MNS is a total preorder on labels, so the maximal
    labels are exactly those with the largest key. Returns None for MNS.
    """
    if kind is SearchKind.GS:
        return lambda a: a != 0
    if kind is SearchKind.BFS:
        top = n + 2
        return lambda a: top - (a & -a).bit_length() if a else 0
    if kind is SearchKind.DFS:
        return int.bit_length
    if kind is SearchKind.MCS:
        return int.bit_count
    if kind is SearchKind.LDFS:
        return lambda a: a
    if kind is SearchKind.LBFS:
        width = n + 1
        return lambda a: _reverse_bits(a, width)
    return None


def _eligible_pairwise(kind: SearchKind, labels: Sequence[int], pool: Sequence[int]) -> list[int]:
    return [
        x for x in pool if not any(_less_mask(kind, labels[x], labels[y]) for y in pool if y != x)
    ]


def _eligible_fast(
    kind: SearchKind, key: Callable[[int], int] | None, labels: Sequence[int], pool: Sequence[int]
) -> list[int]:
    if key is None:
        # MNS: maximal under inclusion
        out = []
        for x in pool:
            lx = labels[x]
            for y in pool:
                ly = labels[y]
                if lx != ly and lx & ~ly == 0:
                    break
            else:
                out.append(x)
        return out
    best = max(key(labels[x]) for x in pool)
    return [x for x in pool if key(labels[x]) == best]


@dataclass(frozen=True)
class LabelState:
    """Snapshot of a label search: labels of unnumbered vertices and positions so far."""

    n: int
    labels: tuple[frozenset[int], ...]
    position: dict[int, int] = field(default_factory=dict)

    @classmethod
    def initial(cls, n: int) -> LabelState:
        return cls(n, tuple(frozenset() for _ in range(n)), {})

    @property
    def unnumbered(self) -> list[int]:
        return [v for v in range(self.n) if v not in self.position]

    def number(self, g: Graph, v: int) -> LabelState:
        if v in self.position:
            raise OrderingError(f"vertex {v} already numbered")
        i = len(self.position) + 1
        labels = list(self.labels)
        for w in g.adj[v]:
            if w not in self.position:
                labels[w] = labels[w] | {i}
        pos = dict(self.position)
        pos[v] = i
        return LabelState(self.n, tuple(labels), pos)


def eligible(g: Graph, kind: SearchKind | str, state: LabelState) -> set[int]:
    kind = SearchKind.parse(kind)
    pool = state.unnumbered
    if not pool:
        raise OrderingError("every vertex is already numbered")
    masks = [_mask(lab) for lab in state.labels]
    return set(_eligible_pairwise(kind, masks, pool))


# -- tie-breaking ----------------------------------------------------------


@dataclass(frozen=True)
class PlusRho:
    """Break ties by the leftmost eligible vertex of ``rho``."""

    rho: VertexOrdering | Sequence[int | str]


@dataclass(frozen=True)
class Arbitrary:
    """Break ties uniformly at random with a seeded generator."""

    seed: int = 0


TieBreak = PlusRho | Arbitrary


def _chooser(g: Graph, tiebreak: TieBreak | None) -> Callable[[list[int]], int]:
    if tiebreak is None:
        return min
    if isinstance(tiebreak, PlusRho):
        rank = as_ordering(g, tiebreak.rho).inverse
        return lambda cands: min(cands, key=rank.__getitem__)
    rng = random.Random(tiebreak.seed)
    return lambda cands: rng.choice(sorted(cands))


def run_search(
    g: Graph, kind: SearchKind | str, tiebreak: TieBreak | None = None
) -> VertexOrdering:
    """One ``kind``-ordering of ``g``; ``PlusRho(rho)`` gives the unique ``kind+(rho)`` ordering.

    The default tie-break is ``PlusRho`` over the identity ordering.
    """
    kind = SearchKind.parse(kind)
    require_connected(g, "graph search")
    choose = _chooser(g, tiebreak)
    key = label_key(kind, g.n)
    labels = [0] * g.n
    pool = list(range(g.n))
    seq = []
    for i in range(1, g.n + 1):
        v = choose(_eligible_fast(kind, key, labels, pool))
        seq.append(v)
        pool.remove(v)
        bit = 1 << i
        for w in g.adj[v]:
            labels[w] |= bit
    return VertexOrdering(tuple(seq))


def is_search_ordering(g: Graph, kind: SearchKind | str, sigma) -> bool:
    """Replay ``sigma`` and check each vertex is eligible when numbered.

    Uses the pairwise definition of eligibility, independent of the
    key-based shortcut the engine itself runs on.
    """
    kind = SearchKind.parse(kind)
    try:
        sigma = as_ordering(g, sigma)
    except (OrderingError, KeyError):
        return False
    labels = [0] * g.n
    pool = list(range(g.n))
    for i, v in enumerate(sigma, 1):
        if v not in _eligible_pairwise(kind, labels, pool):
            return False
        pool.remove(v)
        for w in g.adj[v]:
            labels[w] |= 1 << i
    return True


def _check_cap(g: Graph, cap: int | None) -> None:
    if cap is not None and g.n > cap:
        raise CapExceededError(f"graph has {g.n} vertices, exhaustive cap is {cap}")


def enumerate_orderings(
    g: Graph,
    kind: SearchKind | str,
    limit: int | None = None,
    *,
    cap: int | None = DEFAULT_CAP,
    start: int | None = None,
) -> Iterator[VertexOrdering]:
    """Yield every ``kind``-ordering of ``g`` in lexicographic order of vertex ids.

    ``start`` restricts the stream to orderings beginning with that vertex.
    """
    kind = SearchKind.parse(kind)
    _check_cap(g, cap)
    n = g.n
    key = label_key(kind, n)
    adj = g.adj
    labels = [0] * n
    pool = list(range(n))
    seq: list[int] = []
    emitted = 0

    def rec(i: int) -> Iterator[VertexOrdering]:
        nonlocal emitted
        if i > n:
            emitted += 1
            yield VertexOrdering(tuple(seq))
            return
        cands = _eligible_fast(kind, key, labels, pool)
        if i == 1 and start is not None:
            cands = [start]
        bit = 1 << i
        for v in cands:
            touched = adj[v]
            pool.remove(v)
            seq.append(v)
            for w in touched:
                labels[w] |= bit
            yield from rec(i + 1)
            for w in touched:
                labels[w] &= ~bit
            seq.pop()
            insort(pool, v)
            if limit is not None and emitted >= limit:
                return

    if n:
        yield from rec(1)


def find_ordering(
    g: Graph,
    kind: SearchKind | str,
    *,
    first: int | None = None,
    last: int | None = None,
    cap: int | None = DEFAULT_CAP,
) -> VertexOrdering | None:
    """A ``kind``-ordering with the given first and/or last vertex, or None.

    Backtracks over eligible choices; ``last`` is never numbered while any
    other vertex is still unnumbered.
    """
    kind = SearchKind.parse(kind)
    _check_cap(g, cap)
    n = g.n
    if n == 0:
        return None
    key = label_key(kind, n)
    labels = [0] * n
    pool = list(range(n))
    seq: list[int] = []

    def rec(i: int) -> bool:
        if i > n:
            return True
        cands = _eligible_fast(kind, key, labels, pool)
        if i == 1 and first is not None:
            cands = [first] if first in cands else []
        if last is not None and i < n:
            cands = [v for v in cands if v != last]
        bit = 1 << i
        for v in cands:
            pool.remove(v)
            seq.append(v)
            for w in g.adj[v]:
                labels[w] |= bit
            if rec(i + 1):
                return True
            for w in g.adj[v]:
                labels[w] &= ~bit
            seq.pop()
            insort(pool, v)
        return False

    return VertexOrdering(tuple(seq)) if rec(1) else None
