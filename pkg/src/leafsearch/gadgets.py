"""Reduction gadgets for the hard F-branch leaf questions.

Three constructions map a source problem to "is this vertex an F-branch
leaf of some search ordering?":

* Hamiltonian path in ``G``  ->  DFS, on ``G`` plus pendants plus a universal vertex
* BFS from ``r`` ending at ``v``  ->  BFS, on ``G`` plus a long path and shortcut vertices
* 3-SAT  ->  LBFS/LDFS/MCS/MNS, on a literal/clause graph with a universal vertex

Each source side is solved by brute force here and the target side by the
oracle, so small instances can be checked end to end.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any

from leafsearch.errors import CapExceededError, GraphFormatError, OrderingError
from leafsearch.graph import (
    Graph,
    VertexOrdering,
    is_bipartite,
    is_chordal,
    layers_from,
    require_connected,
)
from leafsearch.oracle import Role, leaf_sets
from leafsearch.recognize import LeafKind, LeafQuery, replay_witness
from leafsearch.search import MNS_LIKE, PlusRho, SearchKind, find_ordering, run_search
from leafsearch.trees import TreeKind

GADGET_CAP = 14


@dataclass(frozen=True)
class CnfInstance:
    """A 3-CNF formula; literals are signed 1-based variable indices."""

    k: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.clauses) < 2:
            raise ValueError("a 3-CNF instance needs at least two clauses")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.k:
                    raise ValueError(f"literal {lit} out of range for {self.k} variables")

    @classmethod
    def from_clauses(cls, clauses: Sequence[Sequence[int]], k: int | None = None) -> CnfInstance:
        """Pad short clauses by repeating literals; a lone clause is doubled."""
        fixed = []
        for c in clauses:
            c = list(c)
            if not c:
                raise ValueError("empty clause")
            if len(c) > 3:
                raise ValueError(f"clause {c} has more than three literals")
            while len(c) < 3:
                c.append(c[-1])
            fixed.append(tuple(c))
        if len(fixed) == 1:
            fixed.append(fixed[0])
        if k is None:
            k = max(abs(lit) for c in fixed for lit in c)
        return cls(k, tuple(fixed))

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.k} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> CnfInstance:
    """Read DIMACS CNF (``c`` comments, ``p cnf k m`` header, 0-terminated clauses)."""
    k = None
    expected = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphFormatError("expected 'p cnf <vars> <clauses>'", lineno)
            k, expected = int(parts[2]), int(parts[3])
            continue
        if k is None:
            raise GraphFormatError("clause before 'p cnf' header", lineno)
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise GraphFormatError(f"bad clause line {line!r}", lineno) from None
        for lit in nums:
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > k:
                raise GraphFormatError(f"literal {lit} exceeds {k} variables", lineno)
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if k is None:
        raise GraphFormatError("missing 'p cnf' header")
    if expected is not None and expected != len(clauses):
        raise GraphFormatError(f"header announces {expected} clauses, found {len(clauses)}")
    try:
        return CnfInstance.from_clauses(clauses, k)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


@dataclass(frozen=True)
class GadgetInstance:
    name: str
    source: Any
    target: Graph
    query_vertex: int
    query: LeafQuery
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class GadgetReport:
    gadget: str
    source_answer: bool
    target_answer: bool
    class_ok: bool
    source_witness: Any = None
    target_witness: list[str] | None = None
    kinds: list[str] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return self.source_answer == self.target_answer

    def record(self) -> dict[str, Any]:
        return {
            "gadget": self.gadget,
            "source": self.source_answer,
            "target": self.target_answer,
            "equivalent": self.equivalent,
            "class_ok": self.class_ok,
            "source_witness": self.source_witness,
            "target_witness": self.target_witness,
            "kinds": self.kinds,
        }


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "_"
    taken.add(name)
    return name


class _Builder:
    def __init__(self, g: Graph):
        self.names = list(g.names)
        self.taken = set(self.names)
        self.edges = list(g.edges())

    def add(self, name: str) -> int:
        self.names.append(_fresh(name, self.taken))
        return len(self.names) - 1

    def join(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.names), self.edges, self.names)


# -- Hamiltonian path -> DFS F-branch leaf ---------------------------------------


def dfs_f_gadget(g: Graph) -> GadgetInstance:
    """Pendant ``v'`` on every vertex plus a universal vertex ``y``.

    ``y`` is an F-branch leaf of some DFS ordering iff ``g`` has a
    Hamiltonian path.
    """
    if g.n < 2:
        raise ValueError("source graph needs at least two vertices")
    b = _Builder(g)
    for v in range(g.n):
        b.join(v, b.add(f"{g.names[v]}'"))
    y = b.add("y")
    for u in range(y):
        b.join(u, y)
    target = b.graph()
    q = LeafQuery(SearchKind.DFS, TreeKind.F, LeafKind.BRANCH, y)
    return GadgetInstance("dfs-f", g, target, y, q)


def hamiltonian_path(g: Graph) -> list[int] | None:
    """Bitmask dynamic program over (visited set, endpoint)."""
    n = g.n
    if n == 0:
        return None
    full = (1 << n) - 1
    # prev[mask][v]: predecessor of v on a path covering mask ending at v, or -1 at start
    reach = [{} for _ in range(1 << n)]
    for v in range(n):
        reach[1 << v][v] = -1
    for mask in range(1, 1 << n):
        for v, _ in list(reach[mask].items()):
            for w in g.adj[v]:
                if mask >> w & 1:
                    continue
                nxt = mask | 1 << w
                reach[nxt].setdefault(w, v)
    if not reach[full]:
        return None
    v = min(reach[full])
    mask = full
    path = []
    while v != -1:
        path.append(v)
        prev = reach[mask][v]
        mask &= ~(1 << v)
        v = prev
    return path[::-1]


# -- BFS end-vertex from r -> BFS F-branch leaf ----------------------------------


def bfs_f_gadget(g: Graph, r: int, v: int) -> GadgetInstance:
    """Path ``r, x1, ..., x(k+3)`` closed by ``v x(k+3)``, plus a vertex ``w'``
    adjacent to ``v`` and ``w`` for each other ``w`` in the last layer of ``r``.

    ``v`` is an F-branch leaf of some BFS ordering of the target iff some BFS
    ordering of ``g`` starting at ``r`` ends at ``v``.
    """
    require_connected(g, "bfs gadget")
    if not is_bipartite(g):
        raise ValueError("source graph must be bipartite")
    depth = layers_from(g, r).depth
    k = int(max(depth))
    if r == v or depth[v] != k:
        raise ValueError(
            f"{g.names[v]} is not in the last BFS layer of {g.names[r]} (layer {k})"
        )
    b = _Builder(g)
    prev = r
    path = []
    for i in range(1, k + 4):
        x = b.add(f"x{i}")
        b.join(prev, x)
        path.append(x)
        prev = x
    b.join(v, path[-1])
    for w in range(g.n):
        if depth[w] == k and w != v:
            wp = b.add(f"{g.names[w]}'")
            b.join(v, wp)
            b.join(w, wp)
    target = b.graph()
    q = LeafQuery(SearchKind.BFS, TreeKind.F, LeafKind.BRANCH, v)
    return GadgetInstance("bfs-f", (g, r, v), target, v, q, {"k": k, "path": path})


# -- 3-SAT -> F-branch leaf of LBFS/LDFS/MCS/MNS ---------------------------------


def _literal_vertex(lit: int) -> int:
    # x_i -> 2(i-1), ~x_i -> 2(i-1)+1
    return 2 * (abs(lit) - 1) + (lit < 0)


def sat_f_gadget(cnf: CnfInstance) -> GadgetInstance:
    """Literals form a complete graph minus the ``x_i ~x_i`` matching, clauses
    an independent set joined to their literals, and ``t`` is universal.

    ``t`` is an F-branch leaf of some LBFS/LDFS/MCS/MNS ordering iff the
    formula is satisfiable. Formulas over one variable get an unused second
    variable: with a single variable ``~x1`` has no literal neighbour and
    would always hang below ``t``.
    """
    k = max(cnf.k, 2)
    names = []
    for i in range(1, k + 1):
        names += [f"x{i}", f"~x{i}"]
    lits = 2 * k
    names += [f"c{j}" for j in range(1, len(cnf.clauses) + 1)]
    t = len(names)
    names.append("t")
    edges = []
    for a in range(lits):
        for b in range(a + 1, lits):
            if a // 2 != b // 2:
                edges.append((a, b))
    for j, clause in enumerate(cnf.clauses):
        for lit in set(clause):
            edges.append((_literal_vertex(lit), lits + j))
    edges += [(u, t) for u in range(t)]
    target = Graph.from_edges(len(names), edges, names)
    q = LeafQuery(SearchKind.MNS, TreeKind.F, LeafKind.BRANCH, t)
    return GadgetInstance("sat-f", cnf, target, t, q, {"k": k})


def satisfying_assignment(cnf: CnfInstance) -> tuple[bool, ...] | None:
    for bits in product((False, True), repeat=cnf.k):
        if cnf.satisfied_by(bits):
            return bits
    return None


def assignment_witness(
    inst: GadgetInstance, assignment: Sequence[bool], kind: SearchKind | str = SearchKind.MNS
) -> VertexOrdering:
    """The ordering built from an assignment: true literals, then ``t``, then the rest."""
    kind = SearchKind.parse(kind)
    k = inst.extra["k"]
    values = list(assignment) + [True] * (k - len(assignment))
    true_lits = [2 * i + (not val) for i, val in enumerate(values)]
    front = true_lits + [inst.query_vertex]
    rest = [u for u in range(inst.target.n) if u not in front]
    return run_search(inst.target, kind, PlusRho(VertexOrdering(tuple(front + rest))))


def sat_structure_ok(inst: GadgetInstance) -> bool:
    """Missing literal pairs are exactly the matching and ``t`` is universal."""
    g, t, k = inst.target, inst.query_vertex, inst.extra["k"]
    if g.degree(t) != g.n - 1:
        return False
    for a in range(2 * k):
        for b in range(a + 1, 2 * k):
            if g.has_edge(a, b) == (a // 2 == b // 2):
                return False
    return True


# -- verification -----------------------------------------------------------------


def _target_side(inst: GadgetInstance, kind: SearchKind, cap: int | None) -> VertexOrdering | None:
    g = inst.target
    if cap is not None and g.n > cap:
        raise CapExceededError(f"target has {g.n} vertices, verification cap is {cap}")
    key = (TreeKind.F, Role.BRANCH)
    s = leaf_sets(g, kind, [key], vertices=[inst.query_vertex], cap=None)
    return s.witnesses.get((key, inst.query_vertex))


def verify_gadget(
    inst: GadgetInstance,
    kinds: Sequence[SearchKind | str] | None = None,
    cap: int | None = GADGET_CAP,
) -> GadgetReport:
    """Solve both sides by exhaustion and report whether they agree.

    For the SAT gadget every listed kind (default: LBFS, LDFS, MCS, MNS)
    must agree with satisfiability.
    """
    if inst.name == "dfs-f":
        path = hamiltonian_path(inst.source)
        src = path is not None
        src_wit = [inst.source.names[u] for u in path] if path else None
        class_ok = is_chordal(inst.target) if is_chordal(inst.source) else True
        kind_list = [SearchKind.DFS]
    elif inst.name == "bfs-f":
        g, r, v = inst.source
        sigma = find_ordering(g, SearchKind.BFS, first=r, last=v, cap=cap)
        src = sigma is not None
        src_wit = sigma.names(g) if sigma else None
        class_ok = is_bipartite(inst.target)
        kind_list = [SearchKind.BFS]
    elif inst.name == "sat-f":
        assignment = satisfying_assignment(inst.source)
        src = assignment is not None
        src_wit = list(assignment) if assignment else None
        class_ok = sat_structure_ok(inst)
        kind_list = [SearchKind.parse(k) for k in (kinds or MNS_LIKE)]
    else:
        raise ValueError(f"unknown gadget {inst.name!r}")

    answers = []
    witness = None
    for kind in kind_list:
        sigma = _target_side(inst, kind, cap)
        if sigma is not None:
            q = LeafQuery(kind, TreeKind.F, LeafKind.BRANCH, inst.query_vertex)
            if not replay_witness(inst.target, q, sigma):
                raise OrderingError("oracle witness failed replay")
            witness = witness or sigma.names(inst.target)
        answers.append(sigma is not None)
    # a kind that disagrees with the others makes the report non-equivalent
    target = answers[0] if len(set(answers)) == 1 else not src
    return GadgetReport(
        inst.name, src, target, class_ok, src_wit, witness, [k.value for k in kind_list]
    )
