"""Chordal graph machinery: MCS orderings, maximal cliques, rooted clique trees.

Undirected graphs are passed around as adjacency mappings
``{vertex: set_of_neighbors}``; a :class:`PartiallyDirectedGraph` without
directed edges is accepted wherever a mapping is.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Mapping, NamedTuple, Sequence

from .errors import PreconditionError, StructuralError
from .graph import PartiallyDirectedGraph

Adjacency = Mapping[int, AbstractSet[int]]


def as_adjacency(U) -> dict[int, frozenset[int]]:
    """Normalize an undirected graph argument to a frozen adjacency dict."""
    if isinstance(U, PartiallyDirectedGraph):
        if U.directed:
            raise PreconditionError("expected an undirected graph, found directed edges")
        return U.undirected_adjacency()
    return {v: frozenset(nb) for v, nb in U.items()}


class McsResult(NamedTuple):
    order: list[int]
    chordal: bool
    peo: list[int] | None


def mcs_order(U) -> McsResult:
    """Maximum Cardinality Search, ties broken by smallest vertex id.

    ``peo`` is the reversed visit order when the graph is chordal, else None.
    """
    adj = as_adjacency(U)
    order = _mcs(adj)
    chordal = _is_reverse_peo(adj, order)
    return McsResult(order, chordal, order[::-1] if chordal else None)


def _mcs(adj: Adjacency, start: Sequence[int] = ()) -> list[int]:
    label = dict.fromkeys(adj, 0)
    visited = set()
    heap = [(0, v) for v in adj]
    heapq.heapify(heap)
    order = []

    def visit(x):
        visited.add(x)
        order.append(x)
        for y in adj[x]:
            if y not in visited:
                label[y] += 1
                heapq.heappush(heap, (-label[y], y))

    for x in start:
        visit(x)
    while heap:
        neg, x = heapq.heappop(heap)
        if x in visited or -neg != label[x]:
            continue
        visit(x)
    return order


def _is_reverse_peo(adj: Adjacency, order: Sequence[int]) -> bool:
    # Tarjan-Yannakakis: earlier neighbors minus the latest one must be earlier neighbors of it.
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in adj[v] if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        f = max(earlier, key=pos.__getitem__)
        nf = adj[f]
        for u in earlier:
            if u != f and u not in nf:
                return False
    return True


def is_peo(U, peo: Sequence[int]) -> bool:
    """Each vertex's later neighbors in ``peo`` form a clique."""
    adj = as_adjacency(U)
    if sorted(peo) != sorted(adj):
        return False
    return _is_reverse_peo(adj, list(peo)[::-1])


def is_chordal(U) -> bool:
    return mcs_order(U).chordal


def maximal_cliques(U, peo: Sequence[int] | None = None) -> list[frozenset[int]]:
    """All maximal cliques, derived from a perfect elimination ordering."""
    adj = as_adjacency(U)
    if peo is None:
        peo = mcs_order(adj).peo
        if peo is None:
            raise StructuralError("graph is not chordal")
    elif not is_peo(adj, peo):
        raise StructuralError("ordering is not a perfect elimination ordering (graph not chordal?)")
    pos = {v: i for i, v in enumerate(peo)}
    later = {v: [u for u in adj[v] if pos[u] > pos[v]] for v in peo}
    # C(v) = {v} + later(v) is dominated iff some u has follower v and |later(u)| = |later(v)| + 1.
    dominated = set()
    for u in peo:
        if later[u]:
            f = min(later[u], key=pos.__getitem__)
            if len(later[u]) == len(later[f]) + 1:
                dominated.add(f)
    return [frozenset([v, *later[v]]) for v in peo if v not in dominated]


@dataclass(frozen=True)
class RootedCliqueTree:
    """Clique tree with nodes ``0..k-1``; parents always precede children.

    ``separators[x]`` is ``cliques[x] & cliques[parent[x]]`` (None at the root).
    """

    cliques: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]
    separators: tuple[frozenset[int] | None, ...]
    root: int = 0

    def __len__(self):
        return len(self.cliques)

    @property
    def nodes(self) -> range:
        return range(len(self.cliques))

    def children(self, x: int) -> list[int]:
        return [y for y, p in enumerate(self.parent) if p == x]

    def path_from_root(self, x: int) -> list[int]:
        path = [x]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def minimal_separators(self) -> set[frozenset[int]]:
        return {s for s in self.separators if s is not None}


def build_clique_tree(U) -> RootedCliqueTree:
    """Rooted clique tree of a connected chordal graph (MCS, Blair & Peyton).

    The root holds the first MCS vertex; new cliques hang below the clique of
    the most recently visited earlier neighbor.
    """
    adj = as_adjacency(U)
    if not adj:
        raise StructuralError("graph has no vertices")
    order = _mcs(adj)
    if not _is_reverse_peo(adj, order):
        raise StructuralError("graph is not chordal")
    pos = {v: i for i, v in enumerate(order)}
    cliques: list[set[int]] = []
    parent: list[int | None] = []
    seps: list[frozenset[int] | None] = []
    clique_of = {}
    prev = -1
    for i, v in enumerate(order):
        earlier = [u for u in adj[v] if pos[u] < i]
        if i > 0 and not earlier:
            raise StructuralError("graph is not connected")
        if i == 0 or len(earlier) <= prev:
            if i > 0:
                last = max(earlier, key=pos.__getitem__)
                parent.append(clique_of[last])
                seps.append(frozenset(earlier))
            else:
                parent.append(None)
                seps.append(None)
            cliques.append({v, *earlier})
        else:
            cliques[-1].add(v)
        clique_of[v] = len(cliques) - 1
        prev = len(earlier)
    return RootedCliqueTree(tuple(frozenset(c) for c in cliques), tuple(parent), tuple(seps))


class PrefixChain:
    """Strictly nested sets X1 < X2 < ... stored as X1 plus per-step additions."""

    __slots__ = ("base", "deltas", "_sets")

    def __init__(self, sets: Iterable[AbstractSet[int]] = ()):
        sets = [frozenset(s) for s in sets]
        for a, b in zip(sets, sets[1:]):
            if not a < b:
                raise PreconditionError(f"chain is not strictly increasing: {sorted(a)} vs {sorted(b)}")
        self._sets = tuple(sets)
        self.base = sets[0] if sets else frozenset()
        self.deltas = tuple(b - a for a, b in zip(sets, sets[1:]))

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        return self._sets

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._sets)

    def first_occurrence(self, ground: Iterable[int]) -> dict[int, int]:
        """Map each element to |X_k| of the first X_k containing it, else |ground| + 1."""
        ground = list(ground)
        o = dict.fromkeys(ground, len(ground) + 1)
        size = 0
        for step in (self.base, *self.deltas) if self._sets else ():
            size += len(step)
            for s in step:
                o[s] = size
        return o

    def __len__(self):
        return len(self._sets)

    def __iter__(self):
        return iter(self._sets)

    def __eq__(self, other):
        if isinstance(other, PrefixChain):
            return self._sets == other._sets
        return NotImplemented

    def __hash__(self):
        return hash(self._sets)

    def __repr__(self):
        return f"PrefixChain({[sorted(s) for s in self._sets]})"


def forbidden_prefixes(tree: RootedCliqueTree, v: int) -> PrefixChain:
    """Separators on the root-to-``v`` path that are contained in ``cliques[v]``."""
    clique = tree.cliques[v]
    found = []
    for x in tree.path_from_root(v)[1:]:
        s = tree.separators[x]
        if s <= clique and (not found or found[-1] != s):
            found.append(s)
    return PrefixChain(found)


def forbidden_prefix_chains(tree: RootedCliqueTree) -> list[PrefixChain]:
    """Forbidden-prefix chains of every node, derived top-down from the parent's chain."""
    chains: list[list[frozenset[int]]] = []
    for x in tree.nodes:
        p = tree.parent[x]
        if p is None:
            chains.append([])
            continue
        clique = tree.cliques[x]
        inherited = chains[p]
        keep = len(inherited)
        # nested chain: the members inside the clique form a prefix
        while keep and not inherited[keep - 1] <= clique:
            keep -= 1
        chain = inherited[:keep]
        s = tree.separators[x]
        if not chain or chain[-1] != s:
            chain.append(s)
        chains.append(chain)
    return [PrefixChain(c) for c in chains]
