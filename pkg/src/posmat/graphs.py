"""Vertex connectivity of undirected graphs, two ways.

The fast path reads k-connectivity off the adjacency matrix: a graph on
``n >= 2`` vertices is k-connected exactly when its adjacency matrix is a
g_k matrix.  The oracle path enumerates vertex cuts by increasing size.
:func:`equivalence_audit` evaluates four equivalent formulations
independently and reports whether they agree.

Vertices are numbered ``1..n``.  Loops are allowed and appear on the
adjacency diagonal, but never affect connectivity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .core import IndexSet, PatternMatrix, check_cap, index_set
from .errors import IndexSetError, RangeError
from .gk import is_gk

__all__ = [
    "Graph",
    "ConnectivityReport",
    "AuditReport",
    "adjacency_matrix",
    "connectivity_bruteforce",
    "is_k_connected_via_gk",
    "vertex_deficiency",
    "equivalence_audit",
    "audit_all_k",
    "all_graphs",
    "random_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "petersen_graph",
]

BRUTEFORCE_CAP = 16


class Graph:
    """An undirected graph on vertices ``1..n`` without multi-edges.

    Edges are stored as sorted pairs ``(u, v)`` with ``u <= v``; ``(u, u)``
    is a loop.
    """

    __slots__ = ("_n", "_edges", "_nbrs")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise RangeError(f"a graph needs at least one vertex, got {n}")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise IndexSetError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
            es.add((min(u, v), max(u, v)))
        self._n = n
        self._edges = frozenset(es)
        nbrs = [0] * n
        for u, v in es:
            if u != v:
                nbrs[u - 1] |= 1 << (v - 1)
                nbrs[v - 1] |= 1 << (u - 1)
        self._nbrs = tuple(nbrs)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def neighbor_masks(self) -> tuple[int, ...]:
        """0-based neighbour bitmasks, loops excluded."""
        return self._nbrs

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph({self._n}, {self.sorted_edges()})"


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise RangeError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def petersen_graph() -> Graph:
    """Outer 5-cycle ``1..5``, inner pentagram ``6..10``, spokes ``i -- i+5``."""
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    return Graph(10, outer + inner + spokes)


def all_graphs(n: int, loops: bool = True) -> Iterator[Graph]:
    """Every graph on ``n`` labelled vertices (``2^(n(n+1)/2)`` with loops)."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u if loops else u + 1, n + 1)]
    for code in range(1 << len(pairs)):
        yield Graph(n, (pairs[b] for b in range(len(pairs)) if (code >> b) & 1))


def random_graph(n: int, rng, p: float = 0.5, loops: bool = True) -> Graph:
    """Erdos-Renyi style graph; each pair (and loop, if allowed) kept with probability ``p``."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u if loops else u + 1, n + 1)]
    return Graph(n, (e for e in pairs if rng.random() < p))


def adjacency_matrix(G: Graph) -> PatternMatrix:
    """Symmetric 0/1 adjacency matrix; a loop puts a 1 on the diagonal."""
    masks = list(G.neighbor_masks)
    for u, v in G.edges:
        if u == v:
            masks[u - 1] |= 1 << (u - 1)
    return PatternMatrix.from_masks(G.n, masks)


def _is_connected(nbrs, alive: int) -> bool:
    """Whether the subgraph induced on ``alive`` is connected (empty counts as connected)."""
    if not alive:
        return True
    start = (alive & -alive).bit_length() - 1
    seen = 1 << start
    queue = deque([start])
    while queue:
        u = queue.popleft()
        new = nbrs[u] & alive & ~seen
        seen |= new
        while new:
            low = new & -new
            queue.append(low.bit_length() - 1)
            new ^= low
    return seen == alive


@dataclass(frozen=True)
class ConnectivityReport:
    """Vertex connectivity and a minimum vertex cut.

    ``min_cut`` is ``None`` exactly when the loop-free graph is complete
    (then no vertex cut exists and ``kappa = n - 1``).
    """

    kappa: int
    min_cut: IndexSet | None
    is_complete_after_loop_removal: bool


def connectivity_bruteforce(G: Graph, max_n: int | None = None) -> ConnectivityReport:
    """Connectivity by enumerating vertex sets in order of increasing size."""
    n = G.n
    check_cap("vertex cut enumeration", n, BRUTEFORCE_CAP, max_n)
    nbrs = G.neighbor_masks
    full = (1 << n) - 1
    complete = all(nbrs[i] == full & ~(1 << i) for i in range(n))
    if complete:
        return ConnectivityReport(n - 1, None, True)
    for size in range(0, n - 1):
        for cut in combinations(range(n), size):
            cm = sum(1 << c for c in cut)
            if not _is_connected(nbrs, full & ~cm):
                return ConnectivityReport(size, IndexSet(n, (c + 1 for c in cut)), False)
    raise AssertionError("a non-complete graph always has a vertex cut")


def is_k_connected_via_gk(G: Graph, k: int) -> bool:
    """k-connectivity as the g_k property of the adjacency matrix."""
    if G.n < 2:
        raise RangeError("needs at least two vertices")
    if not 1 <= k <= G.n - 1:
        raise RangeError(f"k must be in 1..{G.n - 1}, got {k}")
    return is_gk(adjacency_matrix(G), k).is_gk


def vertex_deficiency(G: Graph, Y) -> IndexSet:
    """Vertices outside ``Y`` adjacent to some vertex of ``Y``."""
    Y = index_set(Y, G.n)
    if not Y.is_proper():
        raise IndexSetError(f"{Y} is not a nonempty proper vertex subset")
    ym = Y.mask
    return IndexSet(G.n, (v + 1 for v in range(G.n) if not (ym >> v) & 1 and G.neighbor_masks[v] & ym))


@dataclass(frozen=True)
class AuditReport:
    """The four equivalent forms of k-connectivity, each computed separately.

    ``cut_based``: the brute-force connectivity is at least ``k``.
    ``matrix_based``: the adjacency matrix is a g_k matrix.
    ``witness_based``: every proper ``Y`` has a set ``X`` outside it, of
    size at least ``min(k, |Y^c|)``, with every vertex of ``X`` adjacent to ``Y``.
    ``deficiency_based``: every proper ``Y`` has ``|D_Y| >= min(k, |Y^c|)``.
    """

    k: int
    kappa: int
    cut_based: bool
    matrix_based: bool
    witness_based: bool
    deficiency_based: bool

    @property
    def agree(self) -> bool:
        return len({self.cut_based, self.matrix_based, self.witness_based, self.deficiency_based}) == 1


def _witness_based(G: Graph, k: int) -> bool:
    n = G.n
    nbrs = G.neighbor_masks
    full = (1 << n) - 1
    for ym in range(1, full):
        outside = [v for v in range(n) if not (ym >> v) & 1]
        need = min(k, len(outside))
        # a witness X of any size >= need contains one of size exactly need
        if not any(all(nbrs[v] & ym for v in X) for X in combinations(outside, need)):
            return False
    return True


def _deficiency_based(G: Graph, k: int) -> bool:
    n = G.n
    full = (1 << n) - 1
    for ym in range(1, full):
        Y = IndexSet.from_mask(n, ym)
        if len(vertex_deficiency(G, Y)) < min(k, n - len(Y)):
            return False
    return True


def equivalence_audit(G: Graph, k: int, kappa: int | None = None,
                      max_n: int | None = None) -> AuditReport:
    """Evaluate the four forms of k-connectivity and report them.

    ``kappa`` may be passed in to reuse one brute-force computation across
    several ``k``.
    """
    if G.n < 2:
        raise RangeError("the audit needs at least two vertices")
    if not 1 <= k <= G.n - 1:
        raise RangeError(f"k must be in 1..{G.n - 1}, got {k}")
    if kappa is None:
        kappa = connectivity_bruteforce(G, max_n).kappa
    return AuditReport(
        k=k,
        kappa=kappa,
        cut_based=kappa >= k,
        matrix_based=is_k_connected_via_gk(G, k),
        witness_based=_witness_based(G, k),
        deficiency_based=_deficiency_based(G, k),
    )


def audit_all_k(G: Graph, max_n: int | None = None) -> list[AuditReport]:
    """:func:`equivalence_audit` for every ``k`` in ``1..n-1``."""
    kappa = connectivity_bruteforce(G, max_n).kappa
    return [equivalence_audit(G, k, kappa) for k in range(1, G.n)]
