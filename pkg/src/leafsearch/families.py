"""Small named graphs used in examples, tests and by the CLI."""

from __future__ import annotations

from string import ascii_lowercase

from leafsearch.graph import Graph, load_graph

FIG1_EDGES = "u v\nv w\nw x\nx y\nw z\nz u\nz v\nz x\nz y\n"


def _letters(n: int) -> list[str]:
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"v{i}" for i in range(n)]


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], _letters(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], _letters(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], _letters(n))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre ``c`` and leaves ``l1..lk``."""
    names = ["c"] + [f"l{i}" for i in range(1, leaves + 1)]
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], names)


def fig1() -> Graph:
    """Six-vertex chordal graph: path u-v-w-x-y plus z adjacent to all five."""
    return load_graph(FIG1_EDGES)


def triangle_with_pendant() -> Graph:
    """Triangle a, b, c with a pendant p on a."""
    return Graph.from_named_edges([("a", "b"), ("b", "c"), ("a", "c"), ("a", "p")])


BUILTIN = {
    "fig1": fig1,
    "k2": lambda: complete_graph(2),
    "k3": lambda: complete_graph(3),
    "k4": lambda: complete_graph(4),
    "p3": lambda: path_graph(3),
    "p4": lambda: path_graph(4),
    "p5": lambda: path_graph(5),
    "c4": lambda: cycle_graph(4),
    "c5": lambda: cycle_graph(5),
    "c6": lambda: cycle_graph(6),
    "star3": lambda: star_graph(3),
    "k3+pendant": triangle_with_pendant,
}
