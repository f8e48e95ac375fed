"""F-trees and L-trees of search orderings.

The F-tree joins every non-first vertex to its leftmost neighbour in the
ordering, the L-tree to its rightmost earlier neighbour.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from leafsearch.errors import OrderingError
from leafsearch.graph import Graph, VertexOrdering, as_ordering


class TreeKind(str, Enum):
    F = "f"
    L = "l"

    @classmethod
    def parse(cls, value: str | TreeKind) -> TreeKind:
        if isinstance(value, TreeKind):
            return value
        return cls(value.strip().lower())

    def __str__(self) -> str:
        return self.name


class LeafRole(str, Enum):
    ROOT_LEAF = "root-leaf"
    BRANCH_LEAF = "branch-leaf"
    INTERNAL = "internal"


@dataclass(frozen=True)
class RootedSpanningTree:
    root: int
    parent: tuple[int | None, ...]
    kind: TreeKind | None = None
    ordering: VertexOrdering | None = None

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def _children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def edges(self) -> list[tuple[int, int]]:
        """``(child, parent)`` pairs."""
        return [(v, p) for v, p in enumerate(self.parent) if p is not None]

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
            if len(path) > self.n:
                raise ValueError("parent mapping contains a cycle")
        return path

    def is_ancestor(self, a: int, d: int) -> bool:
        """True if ``a`` lies on the path from ``d`` to the root (``a == d`` included)."""
        return a in self.path_to_root(d)

    def format(self, g: Graph) -> str:
        lines = [f"root {g.names[self.root]}"]
        lines += [f"{g.names[c]} {g.names[p]}" for c, p in self.edges()]
        return "\n".join(lines) + "\n"


def build_tree(g: Graph, sigma, kind: TreeKind | str) -> RootedSpanningTree:
    """The F-tree or L-tree of the GS ordering ``sigma``."""
    kind = TreeKind.parse(kind)
    sigma = as_ordering(g, sigma)
    pos = sigma.inverse
    parent: list[int | None] = [None] * g.n
    for v in sigma.seq[1:]:
        earlier = [w for w in g.adj[v] if pos[w] < pos[v]]
        if not earlier:
            raise OrderingError(f"vertex without earlier neighbor: {g.names[v]}")
        pick = min if kind is TreeKind.F else max
        parent[v] = pick(earlier, key=pos.__getitem__)
    return RootedSpanningTree(sigma.first, tuple(parent), kind, sigma)


def _intervals(t: RootedSpanningTree) -> tuple[list[int], list[int]]:
    enter = [-1] * t.n
    leave = [-1] * t.n
    clock = 0
    stack = [(t.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            leave[v] = clock
            clock += 1
            continue
        enter[v] = clock
        clock += 1
        stack.append((v, True))
        stack.extend((c, False) for c in t.children(v))
    return enter, leave


def is_dfs_l_tree(g: Graph, t: RootedSpanningTree) -> bool:
    """Every edge of ``g`` joins an ancestor-descendant pair of ``t``."""
    if t.n != g.n or any(not g.has_edge(c, p) for c, p in t.edges()):
        return False
    if len(t.edges()) != g.n - 1 or t.parent[t.root] is not None:
        return False
    enter, leave = _intervals(t)
    if -1 in enter:
        return False  # some vertex does not reach the root

    def comparable(u: int, v: int) -> bool:
        return (enter[u] <= enter[v] and leave[v] <= leave[u]) or (
            enter[v] <= enter[u] and leave[u] <= leave[v]
        )

    return all(comparable(u, v) for u, v in g.edges())


ChildPolicy = VertexOrdering | Sequence[int] | Callable[[int], object] | None


def dfs_order_of_tree(
    t: RootedSpanningTree, s: int, child_policy: ChildPolicy = None
) -> VertexOrdering:
    """Preorder of ``t`` from ``s``, visiting children in ``child_policy`` order.

    ``child_policy`` is a total order on the vertices (an ordering or a sort
    key); by default children are taken by increasing id.
    """
    if s != t.root:
        raise OrderingError(f"start vertex {s} is not the tree root {t.root}")
    if child_policy is None:
        key: Callable[[int], object] = int
    elif callable(child_policy):
        key = child_policy
    else:
        rank = VertexOrdering(tuple(child_policy)).inverse
        key = rank.__getitem__
    seq = []
    stack = [s]
    while stack:
        v = stack.pop()
        seq.append(v)
        stack.extend(sorted(t.children(v), key=key, reverse=True))
    return VertexOrdering(tuple(seq))


def classify_leaf(t: RootedSpanningTree, v: int) -> LeafRole:
    kids = len(t.children(v))
    if v == t.root:
        return LeafRole.ROOT_LEAF if kids == 1 else LeafRole.INTERNAL
    return LeafRole.BRANCH_LEAF if kids == 0 else LeafRole.INTERNAL


def leaves(t: RootedSpanningTree) -> frozenset[int]:
    return frozenset(v for v in range(t.n) if classify_leaf(t, v) is not LeafRole.INTERNAL)
