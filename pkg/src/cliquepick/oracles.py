"""Exhaustive enumerators used as ground truth for counting and sampling."""

from __future__ import annotations

from typing import Sequence

from .chordal import as_adjacency, maximal_cliques
from .errors import ResourceError
from .graph import Dag, PartiallyDirectedGraph, is_consistent_extension, topological_order

MAX_AMO_VERTICES = 9
MAX_UNDIRECTED_EDGES = 20


def _orientations(n: int, fixed: Sequence[tuple[int, int]], free: Sequence[tuple[int, int]], adjacent):
    """Acyclic orientations of ``free`` (added to ``fixed``) creating no v-structure at a free edge."""
    pa = [set() for _ in range(n + 1)]
    ch = [set() for _ in range(n + 1)]
    for u, v in fixed:
        pa[v].add(u)
        ch[u].add(v)

    def reaches(a, b):
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in ch[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    out = []

    def rec(i):
        if i == len(free):
            out.append(frozenset((u, v) for v in range(1, n + 1) for u in pa[v]))
            return
        a, b = free[i]
        for u, v in ((a, b), (b, a)):
            if any(not adjacent(u, c) for c in pa[v]) or reaches(v, u):
                continue
            pa[v].add(u)
            ch[u].add(v)
            rec(i + 1)
            pa[v].discard(u)
            ch[u].discard(v)

    rec(0)
    return out


def brute_force_amo_count(U) -> tuple[int, list[frozenset[tuple[int, int]]]]:
    """All acyclic orientations of an undirected graph without v-structures, by exhaustive search."""
    adj = as_adjacency(U)
    if len(adj) > MAX_AMO_VERTICES:
        raise ResourceError(f"brute force limited to {MAX_AMO_VERTICES} vertices, got {len(adj)}")
    edges = sorted({(min(u, v), max(u, v)) for u, nb in adj.items() for v in nb})
    n = max(adj, default=0)
    amos = _orientations(n, (), edges, lambda x, y: y in adj[x])
    return len(amos), amos


def brute_force_extensions(G: PartiallyDirectedGraph) -> tuple[int, list[Dag]]:
    """All consistent extensions of ``G``, by orienting every undirected edge both ways."""
    if len(G.undirected) > MAX_UNDIRECTED_EDGES:
        raise ResourceError(f"brute force limited to {MAX_UNDIRECTED_EDGES} undirected edges, got {len(G.undirected)}")
    if topological_order(G) is None:
        return 0, []
    found = _orientations(G.n, sorted(G.directed), sorted(G.undirected), G.is_adjacent)
    dags = []
    for edges in found:
        D = Dag(G.n, edges)
        if is_consistent_extension(D, G):
            dags.append(D)
    return len(dags), dags


def clique_starting_order(U, amo_edges) -> list[int] | None:
    """Topological ordering of the orientation that begins with a maximal clique, or None.

    Grows the prefix greedily with vertices whose parents are all placed and
    that are adjacent to everything placed so far, then finishes in Kahn order.
    """
    adj = as_adjacency(U)
    pa = {v: set() for v in adj}
    for u, v in amo_edges:
        pa[v].add(u)
    placed: list[int] = []
    placed_set: set[int] = set()
    while True:
        cand = [v for v in sorted(adj) if v not in placed_set and pa[v] <= placed_set and placed_set <= adj[v]]
        if not cand:
            break
        placed.append(cand[0])
        placed_set.add(cand[0])
    prefix = frozenset(placed)
    while len(placed) < len(adj):
        cand = [v for v in sorted(adj) if v not in placed_set and pa[v] <= placed_set]
        if not cand:
            return None
        placed.append(cand[0])
        placed_set.add(cand[0])
    if prefix not in set(maximal_cliques(adj)):
        return None
    return placed
